#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperball/error.hpp"
#include "hyperball/linf.hpp"
#include "hyperball/report.hpp"

namespace hyperball {

// A backend provides Point, Distance, sigma(x, y, t), midpoint(x, y),
// dist(x, y), tolerance(tau) and length(d) converting between Scalar and
// Distance, and encode/decode to and from LinfPoint.

/// Linear bicombing on l-infinity^n with exact rationals. With snap_bits > 0
/// every midpoint is rounded down onto the 2^-snap_bits grid, which keeps
/// denominators bounded during long iterations.
struct LinfBicombing {
  using Point = LinfPoint;
  using Distance = Scalar;

  unsigned snap_bits = 0;

  Point sigma(const Point& x, const Point& y, const Scalar& t) const;
  Point midpoint(const Point& x, const Point& y) const;
  Distance dist(const Point& x, const Point& y) const { return linf_dist(x, y); }
  Distance tolerance(const Scalar& tau) const { return tau; }
  Scalar length(const Distance& d) const { return d; }
  Point mean(const std::vector<Point>& points) const;
  Point encode(const LinfPoint& p) const { return p; }
  LinfPoint decode(const Point& p) const { return p; }
};

/// Same geometry on the fixed grid 2^-64 Z^n, stored as 128-bit integers.
/// Coordinates must stay below 2^56 in absolute value.
struct DyadicLinfBicombing {
  using Point = std::vector<__int128>;
  using Distance = __int128;

  static constexpr unsigned kFractionBits = 64;

  Point sigma(const Point& x, const Point& y, const Scalar& t) const;
  Point midpoint(const Point& x, const Point& y) const;
  Distance dist(const Point& x, const Point& y) const;
  Distance tolerance(const Scalar& tau) const;
  Scalar length(const Distance& d) const;
  Point encode(const LinfPoint& p) const;
  LinfPoint decode(const Point& p) const;
};

struct BarycenterConfig {
  enum class Method { iterate, closed_form };

  Scalar tau = pow2(-30);
  std::size_t max_rounds = 200;
  Method method = Method::iterate;
};

struct BarycenterStats {
  std::size_t rounds = 0;               // top-level leave-one-out rounds
  std::vector<Scalar> diameters;        // tuple diameter before each round, as LinfPoint distances
  bool monotone = true;                 // diameters never increased
};

namespace detail {

template <class B>
typename B::Distance tuple_diameter(const B& b, const std::vector<typename B::Point>& pts) {
  typename B::Distance d = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      typename B::Distance e = b.dist(pts[i], pts[j]);
      if (e > d) d = e;
    }
  }
  return d;
}

// Rounds the exact leave-one-out map needs to shrink `diameter` to `tau`
// (it contracts by exactly 1/(m-1)), plus two.
std::size_t predicted_rounds(const Scalar& diameter, const Scalar& tau, std::size_t m);

// Largest power of two not above tau / (2 m rounds).
Scalar inner_tolerance(const Scalar& tau, std::size_t m, std::size_t rounds);

template <class B>
typename B::Point iterate(const B& b, std::vector<typename B::Point> pts, const BarycenterConfig& cfg,
                          BarycenterStats* stats) {
  using Point = typename B::Point;
  const std::size_t m = pts.size();
  if (m == 1) return pts[0];
  if (m == 2) return b.midpoint(pts[0], pts[1]);

  const auto tol = b.tolerance(cfg.tau);
  BarycenterConfig inner = cfg;
  inner.tau = inner_tolerance(cfg.tau, m, predicted_rounds(b.length(tuple_diameter(b, pts)), cfg.tau, m));

  std::optional<typename B::Distance> last;
  for (std::size_t round = 0;; ++round) {
    const auto diam = tuple_diameter(b, pts);
    if (stats) {
      if (last && diam > *last) stats->monotone = false;
      stats->rounds = round;
      stats->diameters.push_back(b.length(diam));
    }
    last = diam;
    if (diam <= tol) return pts[0];
    if (round == cfg.max_rounds) {
      throw Error(ErrorCode::NoConvergence,
                  "barycenter did not reach tolerance in " + std::to_string(cfg.max_rounds) + " rounds", {m});
    }
    std::vector<Point> next(m);
    std::vector<Point> rest(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0, r = 0; j < m; ++j) {
        if (j != i) rest[r++] = pts[j];
      }
      next[i] = iterate(b, rest, inner, nullptr);
    }
    pts = std::move(next);
  }
}

}  // namespace detail

/// bar_1 = x, bar_2 = midpoint, and for m >= 3 the leave-one-out map is
/// applied until the tuple diameter is at most tau; component 0 is returned.
/// Inner barycenters run with a tighter tolerance so that the truncation
/// drift over all rounds stays below tau / m.
template <class B>
typename B::Point barycenter(const B& b, const std::vector<typename B::Point>& points, const BarycenterConfig& cfg,
                             BarycenterStats* stats = nullptr) {
  if (points.empty()) throw Error(ErrorCode::ParamOutOfRange, "barycenter of an empty tuple");
  if (cfg.tau <= 0) throw Error(ErrorCode::ParamOutOfRange, "tau must be positive");
  if (cfg.method == BarycenterConfig::Method::closed_form) {
    if constexpr (requires { b.mean(points); }) {
      return b.mean(points);
    } else {
      throw Error(ErrorCode::ParamOutOfRange, "backend has no closed form barycenter");
    }
  }
  if (stats) *stats = BarycenterStats{};
  return detail::iterate(b, points, cfg, stats);
}

/// Barycenter of LinfPoints through a backend, decoded back.
template <class B>
LinfPoint barycenter_linf(const B& b, const std::vector<LinfPoint>& points, const BarycenterConfig& cfg,
                          BarycenterStats* stats = nullptr) {
  std::vector<typename B::Point> enc;
  enc.reserve(points.size());
  for (const auto& p : points) enc.push_back(b.encode(p));
  return b.decode(barycenter(b, enc, cfg, stats));
}

/// Coordinate permutation followed by a translation: y_k = x_{perm[k]} + shift_k.
struct LinfIsometry {
  std::vector<std::size_t> perm;
  LinfPoint shift;

  LinfPoint operator()(const LinfPoint& x) const;
};

enum class BackendKind { exact, dyadic };

/// min over permutations of the mean matching cost; m <= 8.
Scalar min_matching_cost(const std::vector<LinfPoint>& xs, const std::vector<LinfPoint>& ys);

/// d(bar(xs), bar(ys)) <= min matching cost + 3 tau. TupleTooLarge for m > 8.
PropertyReport barycenter_contraction_check(BackendKind backend, const std::vector<LinfPoint>& xs,
                                            const std::vector<LinfPoint>& ys, const BarycenterConfig& cfg);

/// d(phi(bar(xs)), bar(phi(xs))) <= 2 tau.
PropertyReport equivariance_check(BackendKind backend, const LinfIsometry& phi, const std::vector<LinfPoint>& xs,
                                  const BarycenterConfig& cfg);

/// Exact LP: is p within eta (l-infinity) of the convex hull of the points?
bool near_convex_hull(const std::vector<LinfPoint>& points, const LinfPoint& p, const Scalar& eta);

LinfPoint barycenter_linf(BackendKind backend, const std::vector<LinfPoint>& points, const BarycenterConfig& cfg,
                          BarycenterStats* stats = nullptr);

}  // namespace hyperball
