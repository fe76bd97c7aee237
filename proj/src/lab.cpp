#include "hyperball/lab.hpp"

#include <string>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

Scalar finite_dist_to_set(const FiniteMetricSpace& space, std::size_t x, const std::vector<std::size_t>& a) {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "subset of the finite space is empty");
  Scalar best = space.d(x, a.front());
  for (auto p : a) best = min(best, space.d(x, p));
  return best;
}

void check_finite_balls(const FiniteMetricSpace& space, const std::vector<FiniteBall>& balls) {
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].center >= space.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "ball centre outside the space", {i});
    }
    if (balls[i].radius < 0) throw Error(ErrorCode::ParamOutOfRange, "negative radius", {i});
  }
}

void check_linf_balls(const std::vector<Ball>& balls, std::size_t dim) {
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].dim() != dim) throw Error(ErrorCode::DimMismatch, "ball dimension", {i});
    if (balls[i].radius < 0) throw Error(ErrorCode::ParamOutOfRange, "negative radius", {i});
  }
}

[[noreturn]] void not_admissible(const Admissibility& adm) {
  if (adm.violation == Admissibility::Violation::pairwise) {
    throw Error(ErrorCode::NotAdmissible,
                "d(x_" + std::to_string(adm.i) + ", x_" + std::to_string(adm.j) + ") > r_i + r_j", {adm.i, adm.j});
  }
  throw Error(ErrorCode::NotAdmissible, "d(x_" + std::to_string(adm.i) + ", A) > r_i", {adm.i});
}

bool region_empty(const Region& a) {
  for (const auto& piece : a.pieces) {
    if (lp_feasible(piece)) return false;
  }
  return true;
}

}  // namespace

Admissibility check_admissible(const LinfFamily& family) {
  const auto& balls = family.balls;
  if (!balls.empty()) check_linf_balls(balls, balls.front().dim());
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (linf_dist(balls[i].center, balls[j].center) > balls[i].radius + balls[j].radius) {
        return {Admissibility::Violation::pairwise, i, j};
      }
    }
  }
  if (family.subset) {
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (dist_to_region(balls[i].center, *family.subset).distance > balls[i].radius) {
        return {Admissibility::Violation::external, i, 0};
      }
    }
  }
  return {};
}

Admissibility check_admissible(const FiniteMetricSpace& space, const FiniteFamily& family) {
  const auto& balls = family.balls;
  check_finite_balls(space, balls);
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (space.d(balls[i].center, balls[j].center) > balls[i].radius + balls[j].radius) {
        return {Admissibility::Violation::pairwise, i, j};
      }
    }
  }
  if (family.subset) {
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (finite_dist_to_set(space, balls[i].center, *family.subset) > balls[i].radius) {
        return {Admissibility::Violation::external, i, 0};
      }
    }
  }
  return {};
}

FeasibilityResult hyperconvex_witness(const LinfFamily& family) {
  if (family.subset) throw Error(ErrorCode::ParamOutOfRange, "use external_witness for families with a subset");
  auto adm = check_admissible(family);
  if (!adm) not_admissible(adm);
  if (family.balls.empty()) throw Error(ErrorCode::ParamOutOfRange, "empty family has no dimension");
  return ball_family_intersection(family.balls);
}

FiniteWitness hyperconvex_witness(const FiniteMetricSpace& space, const FiniteFamily& family) {
  if (family.subset) throw Error(ErrorCode::ParamOutOfRange, "use external_witness for families with a subset");
  auto adm = check_admissible(space, family);
  if (!adm) not_admissible(adm);
  for (std::size_t p = 0; p < space.size(); ++p) {
    bool inside = true;
    for (const auto& b : family.balls) inside = inside && space.d(p, b.center) <= b.radius;
    if (inside) return {true, p};
  }
  return {};
}

FeasibilityResult external_witness(const Region& a, const std::vector<Ball>& balls) {
  check_linf_balls(balls, a.dim);
  if (region_empty(a)) throw Error(ErrorCode::EmptySet, "subset A is empty");
  auto adm = check_admissible(LinfFamily{balls, a});
  if (!adm) not_admissible(adm);
  return region_feasible(a, balls);
}

FiniteWitness external_witness(const FiniteMetricSpace& space, const std::vector<std::size_t>& a,
                               const std::vector<FiniteBall>& balls) {
  for (auto p : a) {
    if (p >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "subset point outside the space", {p});
  }
  auto adm = check_admissible(space, FiniteFamily{balls, a});
  if (!adm) not_admissible(adm);
  for (auto p : a) {
    bool inside = true;
    for (const auto& b : balls) inside = inside && space.d(p, b.center) <= b.radius;
    if (inside) return {true, p};
  }
  return {};
}

FeasibilityResult weakly_external_witness(const Region& a, const LinfPoint& x, const Scalar& r,
                                          const std::vector<Ball>& inner) {
  check_linf_balls(inner, a.dim);
  if (x.size() != a.dim) throw Error(ErrorCode::DimMismatch, "external centre dimension");
  if (region_empty(a)) throw Error(ErrorCode::EmptySet, "subset A is empty");
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!a.contains(inner[i].center)) {
      throw Error(ErrorCode::CenterNotInA, "inner centre " + std::to_string(i) + " is not in A", {i});
    }
  }
  std::vector<Ball> all;
  all.reserve(inner.size() + 1);
  all.push_back({x, r});
  all.insert(all.end(), inner.begin(), inner.end());
  auto adm = check_admissible(LinfFamily{all, a});
  if (!adm) not_admissible(adm);
  return region_feasible(a, all);
}

}  // namespace hyperball
