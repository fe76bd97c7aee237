#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperball/linf.hpp"
#include "hyperball/report.hpp"

namespace hyperball {

enum class OracleContract {
  almost_hyperconvex,
  almost_externally_hyperconvex,
};

/// Answers "a point of `set` within r_i + eps of every x_i" for families of at
/// most `level` balls, or nullopt. Every answer is checked at the call site; a
/// missing point or one that misses a constraint raises OracleFailure.
struct EpsOracle {
  std::function<std::optional<LinfPoint>(const std::vector<Ball>&, const Scalar& eps)> query;
  std::size_t level = 2;
  OracleContract contract = OracleContract::almost_externally_hyperconvex;
  HPolyhedron set;
};

/// LP over set cap the balls themselves; never uses the slack.
EpsOracle exact_oracle(const HPolyhedron& set, std::size_t level);

/// Minimises a seeded random linear objective over set cap the inflated
/// balls, so answers sit on the boundary of the allowed slack.
EpsOracle slack_oracle(const HPolyhedron& set, std::size_t level, std::uint64_t seed);

/// Runs the oracle and checks the answer. `step` is reported in errors.
LinfPoint call_oracle(const EpsOracle& oracle, const std::vector<Ball>& family, const Scalar& eps,
                      std::size_t step);

enum class Scheme { cauchy_halving, chain_walk, triple_34, ip_lift };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

// Scheme parameters needed to recompute the bounds. Unused fields stay zero.
struct TraceParams {
  Scalar scale;       // cauchy-halving
  Scalar r0;          // triple-34
  LinfPoint x;        // chain-walk: outer centre
  Scalar gap_d;       // chain-walk: d(x, y)
  Scalar eps_tilde;   // chain-walk
  Scalar delta;       // chain-walk
  std::size_t n0 = 0; // chain-walk
  Scalar r;           // chain-walk
  Scalar rate;        // ip-lift
  Scalar radius;      // ip-lift
  Scalar tau;         // ip-lift
};

struct RefinementTrace {
  Scheme scheme = Scheme::cauchy_halving;
  std::vector<LinfPoint> iterates;
  std::vector<Scalar> slacks;           // one per iterate, may be empty
  std::vector<Scalar> step_distances;   // d(iterate k, iterate k + 1)
  std::vector<Ball> family;             // target family
  std::optional<HPolyhedron> reference; // A0 for triple-34
  TraceParams params;
};

struct ContractionReport {
  Scheme scheme = Scheme::cauchy_halving;
  std::vector<Scalar> observed;
  std::vector<Scalar> bounds;
  std::vector<bool> step_pass;
  std::vector<std::string> warnings;
  bool passed = true;
};

/// Recomputes every recorded distance and checks the scheme's bounds.
ContractionReport verify_trace(const RefinementTrace& trace, Scheme scheme);

struct AlmostToExactResult {
  LinfPoint point;
  RefinementTrace trace;
};

/// y_0 from slack s/2, then y_{k+1} from the family plus B(y_k, s 2^-k) with
/// slack s 2^-(k+1). Needs an oracle of level >= |f| + 1.
AlmostToExactResult almost_to_exact(const EpsOracle& oracle, const std::vector<Ball>& family, std::size_t rounds,
                                    const Scalar& scale = Scalar(1));

enum class ChainStatus { ok, negative_gap };

struct ChainWalkConfig {
  // Extra rounds of the shrinking double sequence after the first walk.
  std::size_t refine_rounds = 0;
};

struct ChainWalkResult {
  ChainStatus status = ChainStatus::ok;
  LinfPoint a, a_prime;
  Scalar s, eps_tilde, delta;
  std::size_t n0 = 0;
  std::size_t oracle_calls = 0;
  RefinementTrace trace;                                  // a_0 = y, ..., a, a'
  std::vector<std::pair<LinfPoint, LinfPoint>> rounds;    // (a_n, a'_n) per round
};

/// Finds a in A, a' in A', both within r + delta of x, with d(a, a') <= eps
/// and d(y, a) <= s + eps where s = d(x, y) - r. y must lie in both sets.
ChainWalkResult chain_walk(const EpsOracle& oracle_a, const EpsOracle& oracle_a_prime, const LinfPoint& x,
                           const Scalar& r, const LinfPoint& y, const Scalar& eps, const Scalar& delta,
                           const ChainWalkConfig& config = {});

struct TripleResult {
  LinfPoint point;
  Scalar r0;
  RefinementTrace trace;
  ContractionReport report;
};

/// x_{n+1} in A1 cap A2 with d(x_n, A0) <= (3/4)^n r0 and
/// d(x_n, x_{n+1}) <= (3/4)^n r0 / 2.
TripleResult triple_intersection(const EpsOracle& a0, const EpsOracle& a1, const EpsOracle& a2, const LinfPoint& x0,
                                 std::size_t rounds);

Json to_json(const RefinementTrace& trace);
Json to_json(const ContractionReport& report);

}  // namespace hyperball
