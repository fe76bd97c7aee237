#pragma once

#include <cstdint>
#include <random>

#include "hyperball/scalar.hpp"

namespace hyperball {

/// Seedable generator with a fully specified output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard. The
/// standard library distributions are NOT used because their algorithms are
/// implementation-defined; bounded integers use rejection sampling on the raw
/// 64-bit output instead, so a seed replays identically on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// Uniform point of the dyadic grid {lo + j * step} inside [lo, hi].
  Scalar grid(const Scalar& lo, const Scalar& hi, const Scalar& step);

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser; used to derive independent per-chunk seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hyperball
