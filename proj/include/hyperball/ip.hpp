#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperball/bicombing.hpp"
#include "hyperball/linf.hpp"
#include "hyperball/refine.hpp"

namespace hyperball {

struct IPParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t big_n = 0;        // |Omega|, subsets of size n - 1 of n + 1 indices
  std::size_t big_n_prime = 0;  // those containing a fixed (k - 1)-set
  Scalar eps;
  Scalar c;                     // 2 (N - N') / N (1 + eps)^2
};

/// Least n with 2 (n - k + 2)(n - k + 1) > n (n + 1). KTooSmall for k < 2.
std::size_t ip_threshold(std::size_t k);

/// N and N' by enumerating Omega. Requires 2 <= k <= n.
IPParams ip_constants(std::size_t n, std::size_t k, const Scalar& eps);

/// Largest 2^-j (j >= 1) with c(eps) <= (1 + c(0)) / 2.
/// ContractionNotGuaranteed when c(0) >= 1.
Scalar ip_default_eps(std::size_t n, std::size_t k);

/// Returns a point in every given ball, or nullopt. `query` is the centre the
/// provider should stay close to.
using IntersectionOracle = std::function<std::optional<LinfPoint>(const std::vector<Ball>&, const LinfPoint& query)>;

/// Clamps the query point onto the box intersection of the balls.
IntersectionOracle clamp_intersection_oracle();

struct IpLiftConfig {
  std::size_t rounds = 30;
  BarycenterConfig barycenter{pow2(-30), 200, BarycenterConfig::Method::closed_form};
  std::optional<Scalar> eps;  // default: ip_default_eps
};

struct IpLiftResult {
  LinfPoint point;
  IPParams params;
  Scalar radius;                       // R at the base point
  std::vector<Scalar> round_radii;     // R_j = max_J d(y_j, B_J)
  std::vector<Scalar> lift_gaps;       // per round, max_J d(y, z_J)
  Scalar final_violation;              // max_i d(point, B(x_i, r_i))
  RefinementTrace trace;
  ContractionReport report;
  std::vector<std::string> warnings;
};

/// Lifts an (n, k) witness provider to a common point of n + 1 balls in
/// l-infinity^d. Every k-subfamily must intersect.
IpLiftResult ip_lift(const std::vector<Ball>& balls, std::size_t k, const IpLiftConfig& config = {},
                     const IntersectionOracle& oracle = clamp_intersection_oracle());

Json to_json(const IPParams& params);

}  // namespace hyperball
