#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hyperball {

/// Exact rational number. Always kept in canonical (reduced) form.
using Scalar = mpq_class;

/// Parses "p/q" or "p" (decimal integers, optional sign on p). Throws
/// Error{ErrorCode::ParseError} on malformed input or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" rendering with q >= 1 (integers render as "p/1").
std::string format_scalar(const Scalar& value);

/// 2^exponent for any integer exponent.
Scalar pow2(long exponent);

/// base^exponent for exponent >= 0.
Scalar pow(const Scalar& base, unsigned long exponent);

inline Scalar min(const Scalar& a, const Scalar& b) { return a < b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Largest power of two that is <= value (value > 0).
Scalar dyadic_floor(const Scalar& value);

/// Lossy conversion for human-readable output only.
double to_double(const Scalar& value);

}  // namespace hyperball
