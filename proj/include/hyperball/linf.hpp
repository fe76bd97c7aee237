#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hyperball/lp.hpp"
#include "hyperball/report.hpp"
#include "hyperball/scalar.hpp"

namespace hyperball {

using LinfPoint = std::vector<Scalar>;

/// Closed ball of l-infinity^n, i.e. the cube prod [c_k - r, c_k + r].
struct Ball {
  LinfPoint center;
  Scalar radius;

  std::size_t dim() const { return center.size(); }
  bool contains(const LinfPoint& p) const;
};

/// Axis-parallel box prod [lo_k, hi_k]; empty if some lo_k > hi_k.
struct Box {
  std::vector<Scalar> lo, hi;

  std::size_t dim() const { return lo.size(); }
  bool empty() const;
  bool contains(const LinfPoint& p) const;
};

Box to_box(const Ball& ball);

/// {x : a . x <= b for every row}. May be empty or unbounded.
struct HPolyhedron {
  std::size_t dim = 0;
  std::vector<LinearRow> rows;

  bool contains(const LinfPoint& p) const;
  LinearSystem system() const { return {dim, rows}; }
  /// Every row has exactly one non-zero coefficient (or none).
  bool is_box() const;
};

HPolyhedron halfspace(std::vector<Scalar> a, Scalar b);
HPolyhedron box_polyhedron(const Box& box);

/// Finite union of H-polyhedra. Used for non-convex test sets; a single
/// polyhedron converts implicitly.
struct Region {
  std::size_t dim = 0;
  std::vector<HPolyhedron> pieces;

  Region() = default;
  Region(HPolyhedron p) : dim(p.dim), pieces{std::move(p)} {}  // NOLINT(google-explicit-constructor)
  Region(std::size_t d, std::vector<HPolyhedron> ps) : dim(d), pieces(std::move(ps)) {}

  bool contains(const LinfPoint& p) const;
};

struct FeasibilityResult {
  bool feasible = false;
  LinfPoint witness;
  /// Set when infeasibility was detected on a single coordinate interval.
  std::optional<std::size_t> empty_coordinate;

  explicit operator bool() const { return feasible; }
};

struct Projection {
  Scalar distance;
  LinfPoint nearest;
};

Scalar linf_dist(const LinfPoint& p, const LinfPoint& q);

/// Interval intersection per coordinate; the witness takes the lowest
/// admissible value in each coordinate.
FeasibilityResult ball_family_intersection(const std::vector<Ball>& balls);

/// Exact feasibility of p together with the box constraints of `extra`.
FeasibilityResult lp_feasible(const HPolyhedron& p, const std::vector<Ball>& extra = {},
                              LpMethod method = LpMethod::automatic);

/// Same question for a region: the first piece that meets all balls wins.
FeasibilityResult region_feasible(const Region& region, const std::vector<Ball>& extra = {},
                                  LpMethod method = LpMethod::automatic);

/// Exact d(x, A) and a nearest point. Throws EmptySet for empty A.
Projection dist_to_polyhedron(const LinfPoint& x, const HPolyhedron& a,
                              LpMethod method = LpMethod::automatic);
Projection dist_to_region(const LinfPoint& x, const Region& a);

/// Linear bicombing (1 - t) x + t y.
LinfPoint sigma(const LinfPoint& x, const LinfPoint& y, const Scalar& t);

/// {k/16 : 0 <= k <= 16}
std::vector<Scalar> default_t_grid();

PropertyReport sigma_convexity_check(const Region& a,
                                     const std::vector<std::pair<LinfPoint, LinfPoint>>& pairs,
                                     const std::vector<Scalar>& grid);

/// Midpoint convexity of t -> d(sigma(x, y, t), A) on every pair of grid values.
PropertyReport distance_convexity_check(const HPolyhedron& a, const LinfPoint& x, const LinfPoint& y,
                                        const std::vector<Scalar>& grid);

/// Coordinatewise clamp onto a non-empty box.
LinfPoint box_retraction(const Box& a, const LinfPoint& x);

/// d(A, y) for a box A, by clamping.
Scalar dist_to_box(const Box& a, const LinfPoint& y);

/// Point of [x - r, x + r] cap [y - s, y + s] with the smallest modulus.
Scalar min_modulus_selection(const Scalar& x, const Scalar& r, const Scalar& y, const Scalar& s);

Json to_json(const Ball& ball);
Json to_json(const HPolyhedron& p);
Json to_json(const Region& r);

}  // namespace hyperball
