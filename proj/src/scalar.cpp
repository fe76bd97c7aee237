#include "hyperball/scalar.hpp"

#include <cctype>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Scalar value(p, q);
  value.canonicalize();
  return value;
}

std::string format_scalar(const Scalar& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar pow2(long exponent) {
  Scalar value(1);
  if (exponent >= 0) {
    mpq_mul_2exp(value.get_mpq_t(), value.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else {
    mpq_div_2exp(value.get_mpq_t(), value.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return value;
}

Scalar pow(const Scalar& base, unsigned long exponent) {
  Scalar result(1);
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Scalar dyadic_floor(const Scalar& value) {
  // floor(log2(p/q)) from bit lengths, then correct by one step.
  const long bits = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  Scalar candidate = pow2(bits);
  while (candidate > value) candidate /= 2;
  while (candidate * 2 <= value) candidate *= 2;
  return candidate;
}

double to_double(const Scalar& value) { return value.get_d(); }

}  // namespace hyperball
