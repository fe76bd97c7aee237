#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hyperball/linf.hpp"
#include "hyperball/metric.hpp"
#include "hyperball/report.hpp"

namespace hyperball {

// ---------------------------------------------------------------------------
// Ball families on the two backends.

struct LinfFamily {
  std::vector<Ball> balls;
  std::optional<Region> subset;
};

struct FiniteBall {
  std::size_t center;
  Scalar radius;
};

struct FiniteFamily {
  std::vector<FiniteBall> balls;
  std::optional<std::vector<std::size_t>> subset;
};

struct Admissibility {
  enum class Violation { none, pairwise, external };

  Violation violation = Violation::none;
  std::size_t i = 0;
  std::size_t j = 0;  // only meaningful for pairwise violations

  explicit operator bool() const { return violation == Violation::none; }
};

/// d(x_i, x_j) <= r_i + r_j for i < j, then d(x_i, A) <= r_i if A is present.
Admissibility check_admissible(const LinfFamily& family);
Admissibility check_admissible(const FiniteMetricSpace& space, const FiniteFamily& family);

struct FiniteWitness {
  bool found = false;
  std::size_t point = 0;

  explicit operator bool() const { return found; }
};

/// Common point of an admissible family without subset. Throws NotAdmissible.
FeasibilityResult hyperconvex_witness(const LinfFamily& family);
FiniteWitness hyperconvex_witness(const FiniteMetricSpace& space, const FiniteFamily& family);

/// Point of A inside every ball; centres may lie anywhere with d(x_i, A) <= r_i.
FeasibilityResult external_witness(const Region& a, const std::vector<Ball>& balls);
FiniteWitness external_witness(const FiniteMetricSpace& space, const std::vector<std::size_t>& a,
                               const std::vector<FiniteBall>& balls);

/// Point of A cap B(x, r) cap the inner balls, whose centres must lie in A.
FeasibilityResult weakly_external_witness(const Region& a, const LinfPoint& x, const Scalar& r,
                                          const std::vector<Ball>& inner);

// ---------------------------------------------------------------------------
// Randomised refutation search.

enum class RefuteVariant {
  plain,            // A as a metric space: centres in A
  external,         // centres anywhere, d(x_i, A) <= r_i
  weakly_external,  // one external centre, the rest in A
};

std::string_view to_string(RefuteVariant variant);
std::optional<RefuteVariant> refute_variant_from_string(std::string_view name);

struct RefuteConfig {
  std::size_t level = 2;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 0;
  RefuteVariant variant = RefuteVariant::external;
  unsigned threads = 1;
  // Box-only subsets with moderate denominators are sampled in scaled int64
  // arithmetic; the draws are identical either way.
  bool allow_integer_path = true;
};

/// Samples families of `level` balls and searches for an admissible one whose
/// intersection misses A. Deterministic for a given seed regardless of the
/// thread count. Never reports `holds`.
PropertyReport refute_search(const Region& a, const RefuteConfig& config);

/// Independent re-check of a refutation certificate: exact admissibility and
/// exact infeasibility through the simplex route.
bool verify_refutation(const Region& a, const Json& certificate);

/// Balls of a refutation certificate, external centre first when present.
std::vector<Ball> certificate_balls(const Json& certificate);

/// Repeats the last ball until the family has `level` members.
Json pad_refutation(const Json& certificate, std::size_t level);

/// Runs refute_search at levels 2..n_max. A refutation above level 4 with no
/// refutation at levels <= 4 (neither from search nor among its sub-families
/// of at most four balls) is flagged THEOREM-INCONSISTENT.
PropertyReport four_to_n_consistency(const Region& a, std::size_t n_max, std::uint64_t budget,
                                     std::uint64_t seed, RefuteVariant variant = RefuteVariant::external,
                                     unsigned threads = 1);

// ---------------------------------------------------------------------------
// Helly order.

struct HellyInstance {
  std::size_t n = 0;
  std::vector<HPolyhedron> sets;       // A_1 .. A_{n+1}
  std::vector<LinfPoint> witnesses;    // witness j lies in every A_i with i != j
};

/// Half-spaces of l-infinity^n forming a family that is not Helly of order n.
HellyInstance helly_counterexample(std::size_t n);

/// Checks every witness against its n leave-one-out sets and that the total
/// intersection is empty. `refuted` means the instance failed to verify.
PropertyReport verify_helly_instance(const HellyInstance& instance);

/// Exhaustive over sub-families (at most kEnumerationCap sets): `refuted`
/// when some sub-family has all k-fold intersections non-empty but an empty
/// total intersection.
PropertyReport helly_order_check(const std::vector<HPolyhedron>& sets, std::size_t k);

/// Every pairwise-admissible family of n balls with centres in the graph and
/// radii among the distance values up to the diameter has a common vertex.
PropertyReport graph_n_helly_bruteforce(const GraphInstance& graph, std::size_t n);

/// Families visited by graph_n_helly_bruteforce before it refuses to run.
inline constexpr std::uint64_t kBruteforceCap = 5'000'000;

}  // namespace hyperball
