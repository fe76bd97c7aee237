#include "hyperball/linf.hpp"

#include <string>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b), {a, b});
  }
}

Scalar dot(const std::vector<Scalar>& a, const LinfPoint& x) {
  Scalar s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0) s += a[k] * x[k];
  }
  return s;
}

Scalar clamp(const Scalar& v, const Scalar& lo, const Scalar& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

// Intersection of all ball boxes; nullopt-like empty box if the list is empty.
Box aggregate(std::size_t dim, const std::vector<Ball>& balls) {
  Box box;
  box.lo.resize(dim);
  box.hi.resize(dim);
  bool first = true;
  for (const auto& ball : balls) {
    require_same_dim(ball.dim(), dim, "ball");
    for (std::size_t k = 0; k < dim; ++k) {
      Scalar lo = ball.center[k] - ball.radius;
      Scalar hi = ball.center[k] + ball.radius;
      if (first || lo > box.lo[k]) box.lo[k] = lo;
      if (first || hi < box.hi[k]) box.hi[k] = hi;
    }
    first = false;
  }
  return box;
}

// Box bounds implied by single-coordinate rows; nullopt entries are infinite.
struct OpenBox {
  std::vector<std::optional<Scalar>> lo, hi;
};

OpenBox box_rows(const HPolyhedron& p) {
  OpenBox box{std::vector<std::optional<Scalar>>(p.dim), std::vector<std::optional<Scalar>>(p.dim)};
  for (const auto& row : p.rows) {
    for (std::size_t k = 0; k < p.dim; ++k) {
      if (row.a[k] == 0) continue;
      Scalar bound = row.b / row.a[k];
      if (row.a[k] > 0) {
        if (!box.hi[k] || bound < *box.hi[k]) box.hi[k] = bound;
      } else {
        if (!box.lo[k] || bound > *box.lo[k]) box.lo[k] = bound;
      }
    }
  }
  return box;
}

std::optional<std::size_t> constant_row_violation(const HPolyhedron& p) {
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    bool zero = true;
    for (const auto& c : p.rows[i].a) zero = zero && c == 0;
    if (zero && p.rows[i].b < 0) return i;
  }
  return std::nullopt;
}

// Box constraints plus at most one general row: start from the FM-style
// choice clamp(0, lo, hi) and slide coordinates towards their favourable
// bound until the row holds. nullopt means "not this shape".
std::optional<FeasibilityResult> box_plus_one_row(const HPolyhedron& p, const std::vector<Ball>& extra,
                                                  const Box& bounds) {
  const LinearRow* general = nullptr;
  HPolyhedron boxed{p.dim, {}};
  for (const auto& row : p.rows) {
    std::size_t nonzero = 0;
    for (const auto& c : row.a) nonzero += c != 0;
    if (nonzero <= 1) {
      boxed.rows.push_back(row);
    } else if (general) {
      return std::nullopt;
    } else {
      general = &row;
    }
  }
  if (!general) return std::nullopt;
  OpenBox box = box_rows(boxed);
  FeasibilityResult out;
  LinfPoint x(p.dim);
  for (std::size_t k = 0; k < p.dim; ++k) {
    if (!extra.empty()) {
      if (!box.lo[k] || bounds.lo[k] > *box.lo[k]) box.lo[k] = bounds.lo[k];
      if (!box.hi[k] || bounds.hi[k] < *box.hi[k]) box.hi[k] = bounds.hi[k];
    }
    if (box.lo[k] && box.hi[k] && *box.lo[k] > *box.hi[k]) {
      out.empty_coordinate = k;
      return out;
    }
    Scalar v = 0;
    if (box.lo[k] && v < *box.lo[k]) v = *box.lo[k];
    if (box.hi[k] && v > *box.hi[k]) v = *box.hi[k];
    x[k] = v;
  }
  Scalar excess = dot(general->a, x) - general->b;
  for (std::size_t k = 0; k < p.dim && excess > 0; ++k) {
    const Scalar& a = general->a[k];
    if (a == 0) continue;
    const std::optional<Scalar>& target = a > 0 ? box.lo[k] : box.hi[k];
    Scalar needed = excess / a;  // signed shift of x_k that clears the excess
    if (target) {
      Scalar room = x[k] - *target;
      if ((a > 0 && needed > room) || (a < 0 && needed < room)) needed = room;
    }
    x[k] -= needed;
    excess -= a * needed;
  }
  if (excess > 0) return out;
  out.feasible = true;
  out.witness = std::move(x);
  return out;
}

void check_rows(const HPolyhedron& p) {
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].a.size() != p.dim) {
      throw Error(ErrorCode::DimMismatch, "polyhedron row " + std::to_string(i) + " has wrong length", {i});
    }
  }
}

}  // namespace

bool Ball::contains(const LinfPoint& p) const { return p.size() == dim() && linf_dist(center, p) <= radius; }

bool Box::empty() const {
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > hi[k]) return true;
  }
  return false;
}

bool Box::contains(const LinfPoint& p) const {
  if (p.size() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  }
  return true;
}

Box to_box(const Ball& ball) { return aggregate(ball.dim(), {ball}); }

bool HPolyhedron::contains(const LinfPoint& p) const {
  if (p.size() != dim) return false;
  for (const auto& row : rows) {
    if (dot(row.a, p) > row.b) return false;
  }
  return true;
}

bool HPolyhedron::is_box() const {
  for (const auto& row : rows) {
    std::size_t nonzero = 0;
    for (const auto& c : row.a) nonzero += c != 0;
    if (nonzero > 1) return false;
  }
  return true;
}

HPolyhedron halfspace(std::vector<Scalar> a, Scalar b) {
  HPolyhedron p;
  p.dim = a.size();
  p.rows.push_back({std::move(a), std::move(b)});
  return p;
}

HPolyhedron box_polyhedron(const Box& box) {
  HPolyhedron p;
  p.dim = box.dim();
  for (std::size_t k = 0; k < p.dim; ++k) {
    std::vector<Scalar> up(p.dim, Scalar(0)), down(p.dim, Scalar(0));
    up[k] = 1;
    down[k] = -1;
    p.rows.push_back({up, box.hi[k]});
    p.rows.push_back({down, -box.lo[k]});
  }
  return p;
}

bool Region::contains(const LinfPoint& p) const {
  for (const auto& piece : pieces) {
    if (piece.contains(p)) return true;
  }
  return false;
}

Scalar linf_dist(const LinfPoint& p, const LinfPoint& q) {
  require_same_dim(p.size(), q.size(), "linf_dist");
  Scalar best = 0;
  Scalar diff;
  for (std::size_t k = 0; k < p.size(); ++k) {
    mpq_sub(diff.get_mpq_t(), p[k].get_mpq_t(), q[k].get_mpq_t());
    if (diff < 0) mpq_neg(diff.get_mpq_t(), diff.get_mpq_t());
    if (diff > best) best = diff;
  }
  return best;
}

FeasibilityResult ball_family_intersection(const std::vector<Ball>& balls) {
  if (balls.empty()) throw Error(ErrorCode::ParamOutOfRange, "ball_family_intersection needs at least one ball");
  const std::size_t dim = balls.front().dim();
  Box box = aggregate(dim, balls);
  FeasibilityResult out;
  for (std::size_t k = 0; k < dim; ++k) {
    if (box.lo[k] > box.hi[k]) {
      out.empty_coordinate = k;
      return out;
    }
  }
  out.feasible = true;
  out.witness = box.lo;
  return out;
}

FeasibilityResult lp_feasible(const HPolyhedron& p, const std::vector<Ball>& extra, LpMethod method) {
  check_rows(p);
  FeasibilityResult out;
  if (constant_row_violation(p)) return out;

  Box bounds = aggregate(p.dim, extra);
  if (!extra.empty()) {
    for (std::size_t k = 0; k < p.dim; ++k) {
      if (bounds.lo[k] > bounds.hi[k]) {
        out.empty_coordinate = k;
        return out;
      }
    }
  }

  if (p.is_box() && method == LpMethod::automatic) {
    OpenBox rows = box_rows(p);
    LinfPoint x(p.dim);
    for (std::size_t k = 0; k < p.dim; ++k) {
      std::optional<Scalar> lo = rows.lo[k], hi = rows.hi[k];
      if (!extra.empty()) {
        if (!lo || bounds.lo[k] > *lo) lo = bounds.lo[k];
        if (!hi || bounds.hi[k] < *hi) hi = bounds.hi[k];
      }
      if (lo && hi && *lo > *hi) {
        out.empty_coordinate = k;
        return out;
      }
      Scalar v = 0;
      if (lo && v < *lo) v = *lo;
      if (hi && v > *hi) v = *hi;
      x[k] = v;
    }
    out.feasible = true;
    out.witness = std::move(x);
    return out;
  }

  if (method == LpMethod::automatic) {
    if (auto r = box_plus_one_row(p, extra, bounds)) return *r;
  }

  LinearSystem system = p.system();
  if (!extra.empty()) {
    for (std::size_t k = 0; k < p.dim; ++k) {
      std::vector<Scalar> up(p.dim, Scalar(0)), down(p.dim, Scalar(0));
      up[k] = 1;
      down[k] = -1;
      system.rows.push_back({up, bounds.hi[k]});
      system.rows.push_back({down, -bounds.lo[k]});
    }
  }
  auto x = find_feasible_point(system, method);
  if (x) {
    out.feasible = true;
    out.witness = std::move(*x);
  }
  return out;
}

FeasibilityResult region_feasible(const Region& region, const std::vector<Ball>& extra, LpMethod method) {
  for (const auto& piece : region.pieces) {
    auto result = lp_feasible(piece, extra, method);
    if (result) return result;
  }
  return {};
}

Projection dist_to_polyhedron(const LinfPoint& x, const HPolyhedron& a, LpMethod method) {
  check_rows(a);
  require_same_dim(x.size(), a.dim, "dist_to_polyhedron");
  if (a.contains(x)) return {Scalar(0), x};
  if (!lp_feasible(a, {}, method)) throw Error(ErrorCode::EmptySet, "distance to an empty polyhedron");

  if (method == LpMethod::automatic && a.is_box()) {
    OpenBox box = box_rows(a);
    Projection out{Scalar(0), x};
    for (std::size_t k = 0; k < a.dim; ++k) {
      if (box.lo[k] && x[k] < *box.lo[k]) out.nearest[k] = *box.lo[k];
      if (box.hi[k] && x[k] > *box.hi[k]) out.nearest[k] = *box.hi[k];
      out.distance = max(out.distance, abs(x[k] - out.nearest[k]));
    }
    return out;
  }
  if (method == LpMethod::automatic && a.rows.size() == 1) {
    // Moving every coordinate by d against sign(a) lowers a . x by d * |a|_1.
    const auto& row = a.rows.front();
    Scalar norm1 = 0;
    for (const auto& c : row.a) norm1 += abs(c);
    Scalar d = (dot(row.a, x) - row.b) / norm1;
    Projection out{d, x};
    for (std::size_t k = 0; k < a.dim; ++k) {
      if (row.a[k] > 0) out.nearest[k] -= d;
      else if (row.a[k] < 0) out.nearest[k] += d;
    }
    return out;
  }

  // Variables (p_1..p_n, r): p in A, |p_k - x_k| <= r, minimise r.
  const std::size_t n = a.dim;
  LinearSystem system{n + 1, {}};
  for (const auto& row : a.rows) {
    LinearRow r{row.a, row.b};
    r.a.push_back(0);
    system.rows.push_back(std::move(r));
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Scalar> up(n + 1, Scalar(0)), down(n + 1, Scalar(0));
    up[k] = 1;
    up[n] = -1;
    down[k] = -1;
    down[n] = -1;
    system.rows.push_back({up, x[k]});
    system.rows.push_back({down, -x[k]});
  }
  std::vector<Scalar> objective(n + 1, Scalar(0));
  objective[n] = 1;
  auto best = minimize(system, objective, method);
  if (!best) throw Error(ErrorCode::EmptySet, "distance to an empty polyhedron");
  best->point.pop_back();
  return {best->value, best->point};
}

Projection dist_to_region(const LinfPoint& x, const Region& a) {
  std::optional<Projection> best;
  for (const auto& piece : a.pieces) {
    if (!lp_feasible(piece)) continue;
    Projection p = dist_to_polyhedron(x, piece);
    if (!best || p.distance < best->distance) best = std::move(p);
  }
  if (!best) throw Error(ErrorCode::EmptySet, "distance to an empty region");
  return *best;
}

LinfPoint sigma(const LinfPoint& x, const LinfPoint& y, const Scalar& t) {
  require_same_dim(x.size(), y.size(), "sigma");
  if (t < 0 || t > 1) throw Error(ErrorCode::ParamOutOfRange, "sigma parameter must lie in [0,1]");
  LinfPoint out(x.size());
  Scalar s = 1 - t;
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = s * x[k] + t * y[k];
  return out;
}

std::vector<Scalar> default_t_grid() {
  std::vector<Scalar> grid;
  for (int k = 0; k <= 16; ++k) grid.emplace_back(k, 16);
  for (auto& t : grid) t.canonicalize();
  return grid;
}

PropertyReport sigma_convexity_check(const Region& a,
                                     const std::vector<std::pair<LinfPoint, LinfPoint>>& pairs,
                                     const std::vector<Scalar>& grid) {
  PropertyReport report;
  report.check = "sigma_convexity";
  report.exhaustive = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!a.contains(pairs[i].first) || !a.contains(pairs[i].second)) {
      throw Error(ErrorCode::PointNotInSet, "pair " + std::to_string(i) + " is not inside the set", {i});
    }
  }
  if (grid.empty()) report.warnings.push_back("empty t-grid; nothing to check");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const auto& t : grid) {
      ++report.checked;
      LinfPoint p = sigma(pairs[i].first, pairs[i].second, t);
      if (!a.contains(p)) {
        report.verdict = Verdict::refuted;
        report.certificate = {{"pair", i}, {"x", pairs[i].first}, {"y", pairs[i].second}, {"t", t}, {"point", p}};
        return report;
      }
    }
  }
  report.verdict = Verdict::holds;
  return report;
}

PropertyReport distance_convexity_check(const HPolyhedron& a, const LinfPoint& x, const LinfPoint& y,
                                        const std::vector<Scalar>& grid) {
  if (!lp_feasible(a)) throw Error(ErrorCode::EmptySet, "distance convexity against an empty set");
  PropertyReport report;
  report.check = "distance_convexity";
  report.exhaustive = true;
  if (grid.empty()) report.warnings.push_back("empty t-grid; nothing to check");
  std::vector<Scalar> d;
  d.reserve(grid.size());
  for (const auto& t : grid) d.push_back(dist_to_polyhedron(sigma(x, y, t), a).distance);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      ++report.checked;
      Scalar mid = (grid[i] + grid[j]) / 2;
      Scalar lhs = dist_to_polyhedron(sigma(x, y, mid), a).distance;
      Scalar rhs = (d[i] + d[j]) / 2;
      if (lhs > rhs) {
        report.verdict = Verdict::refuted;
        report.certificate = {{"s", grid[i]}, {"t", grid[j]}, {"d_mid", lhs}, {"d_avg", rhs}};
        return report;
      }
    }
  }
  report.verdict = Verdict::holds;
  return report;
}

LinfPoint box_retraction(const Box& a, const LinfPoint& x) {
  require_same_dim(a.dim(), x.size(), "box_retraction");
  if (a.empty()) throw Error(ErrorCode::EmptyBox, "retraction onto an empty box");
  LinfPoint out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = clamp(x[k], a.lo[k], a.hi[k]);
  return out;
}

Scalar dist_to_box(const Box& a, const LinfPoint& y) { return linf_dist(y, box_retraction(a, y)); }

Scalar min_modulus_selection(const Scalar& x, const Scalar& r, const Scalar& y, const Scalar& s) {
  Scalar lo = max(x - r, y - s);
  Scalar hi = min(x + r, y + s);
  if (lo > hi) throw Error(ErrorCode::EmptyIntersection, "intervals do not meet");
  return clamp(Scalar(0), lo, hi);
}

Json to_json(const Ball& ball) { return {{"center", ball.center}, {"r", ball.radius}}; }

Json to_json(const HPolyhedron& p) {
  Json rows = Json::array();
  for (const auto& row : p.rows) rows.push_back({{"a", row.a}, {"b", row.b}});
  return {{"dim", p.dim}, {"rows", rows}};
}

Json to_json(const Region& r) {
  if (r.pieces.size() == 1) return {{"polyhedron", to_json(r.pieces.front())}};
  Json pieces = Json::array();
  for (const auto& p : r.pieces) pieces.push_back(to_json(p));
  return {{"region", {{"dim", r.dim}, {"pieces", pieces}}}};
}

}  // namespace hyperball
