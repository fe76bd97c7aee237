#include "hyperball/lp.hpp"

#include <algorithm>
#include <map>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

thread_local LpMethod g_last_route = LpMethod::automatic;

// Intermediate row count at which elimination gives up and hands over.
constexpr std::size_t kFmBlowup = 4000;

struct FmBlowup {};

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& x) {
  Scalar s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 0) s += a[k] * x[k];
  }
  return s;
}

void check_shape(const LinearSystem& system) {
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    if (system.rows[i].a.size() != system.dim) {
      throw Error(ErrorCode::DimMismatch, "row length does not match system dimension", {i});
    }
  }
}

// Scales rows so the largest coefficient magnitude is 1, keeps the tightest
// offset per direction. Returns false if a constant row 0 <= b < 0 shows up.
bool normalize(std::vector<LinearRow>& rows) {
  std::map<std::vector<Scalar>, Scalar> tightest;
  for (auto& row : rows) {
    Scalar scale = 0;
    for (const auto& c : row.a) scale = max(scale, abs(c));
    if (scale == 0) {
      if (row.b < 0) return false;
      continue;
    }
    if (scale != 1) {
      for (auto& c : row.a) c /= scale;
      row.b /= scale;
    }
    auto [it, inserted] = tightest.emplace(std::move(row.a), row.b);
    if (!inserted && row.b < it->second) it->second = row.b;
  }
  rows.clear();
  rows.reserve(tightest.size());
  for (auto& [a, b] : tightest) rows.push_back({a, b});
  return true;
}

// Eliminates variables one at a time; the variable with the smallest
// pos*neg product goes first, except `last` which is always eliminated last.
// Back-substitution assigns clamp(0, lo, hi) per variable, so `last` gets the
// smallest value its projection allows.
std::optional<std::vector<Scalar>> fourier_motzkin(const LinearSystem& system,
                                                   std::optional<std::size_t> last) {
  const std::size_t dim = system.dim;
  std::vector<LinearRow> current = system.rows;
  if (!normalize(current)) return std::nullopt;

  std::vector<std::vector<LinearRow>> stages;
  std::vector<std::size_t> order;
  std::vector<bool> gone(dim, false);
  for (std::size_t step = 0; step < dim; ++step) {
    std::size_t pick = dim;
    std::size_t best_cost = 0;
    for (std::size_t v = 0; v < dim; ++v) {
      if (gone[v] || (last && *last == v && step + 1 < dim)) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& row : current) {
        if (row.a[v] > 0) ++pos;
        else if (row.a[v] < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (pick == dim || cost < best_cost) {
        pick = v;
        best_cost = cost;
      }
    }
    stages.push_back(current);
    order.push_back(pick);
    gone[pick] = true;

    std::vector<LinearRow> pos, neg, next;
    for (auto& row : current) {
      if (row.a[pick] > 0) pos.push_back(std::move(row));
      else if (row.a[pick] < 0) neg.push_back(std::move(row));
      else next.push_back(std::move(row));
    }
    if (next.size() + pos.size() * neg.size() > kFmBlowup) throw FmBlowup{};
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p / p_v + q / |q_v| cancels the picked variable.
        const Scalar& wp = p.a[pick];
        Scalar wq = -q.a[pick];
        LinearRow combined{std::vector<Scalar>(dim), p.b * wq + q.b * wp};
        for (std::size_t k = 0; k < dim; ++k) combined.a[k] = p.a[k] * wq + q.a[k] * wp;
        combined.a[pick] = 0;
        next.push_back(std::move(combined));
      }
    }
    if (!normalize(next)) return std::nullopt;
    current = std::move(next);
  }

  std::vector<Scalar> x(dim, Scalar(0));
  for (std::size_t s = stages.size(); s-- > 0;) {
    const std::size_t v = order[s];
    std::optional<Scalar> lo, hi;
    for (const auto& row : stages[s]) {
      if (row.a[v] == 0) continue;
      Scalar rest = row.b;
      for (std::size_t k = 0; k < dim; ++k) {
        if (k != v && row.a[k] != 0) rest -= row.a[k] * x[k];
      }
      Scalar bound = rest / row.a[v];
      if (row.a[v] > 0) {
        if (!hi || bound < *hi) hi = bound;
      } else {
        if (!lo || bound > *lo) lo = bound;
      }
    }
    Scalar value = 0;
    if (lo && value < *lo) value = *lo;
    if (hi && value > *hi) value = *hi;
    if (last && v == *last) {
      if (!lo) throw Error(ErrorCode::ParamOutOfRange, "objective unbounded below");
      value = *lo;
    }
    x[v] = value;
  }
  return x;
}

// Dense tableau, Bland's rule. Columns: u (dim), v (dim), slacks (rows),
// artificials (one per row with negative offset).
class Simplex {
 public:
  Simplex(const LinearSystem& system, const std::vector<Scalar>* objective)
      : dim_(system.dim), m_(system.rows.size()) {
    n_struct_ = 2 * dim_ + m_;
    std::vector<std::size_t> needs_art;
    for (std::size_t i = 0; i < m_; ++i) {
      if (system.rows[i].b < 0) needs_art.push_back(i);
    }
    n_ = n_struct_ + needs_art.size();
    t_.assign(m_, std::vector<Scalar>(n_ + 1));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = system.rows[i];
      const int sign = row.b < 0 ? -1 : 1;
      for (std::size_t k = 0; k < dim_; ++k) {
        t_[i][k] = sign * row.a[k];
        t_[i][dim_ + k] = -sign * row.a[k];
      }
      t_[i][2 * dim_ + i] = sign;
      t_[i][n_] = sign * row.b;
      basis_[i] = 2 * dim_ + i;
    }
    for (std::size_t q = 0; q < needs_art.size(); ++q) {
      const std::size_t i = needs_art[q];
      t_[i][n_struct_ + q] = 1;
      basis_[i] = n_struct_ + q;
    }
    if (objective) {
      cost_.assign(n_, Scalar(0));
      for (std::size_t k = 0; k < dim_; ++k) {
        cost_[k] = (*objective)[k];
        cost_[dim_ + k] = -(*objective)[k];
      }
    }
  }

  // Returns false if infeasible.
  bool phase_one() {
    std::vector<Scalar> c(n_, Scalar(0));
    for (std::size_t j = n_struct_; j < n_; ++j) c[j] = 1;
    load_costs(c);
    run(n_);
    if (z_[n_] != 0) return false;  // z_[n_] holds -objective
    // Drive zero-valued artificials out of the basis.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) continue;
      std::size_t col = n_struct_;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (t_[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col < n_struct_) pivot(i, col);
    }
    return true;
  }

  // Returns false if unbounded.
  bool phase_two() {
    std::vector<Scalar> c = cost_;
    for (std::size_t j = n_struct_; j < n_; ++j) c[j] = 0;
    load_costs(c);
    return run(n_struct_);
  }

  std::vector<Scalar> point() const {
    std::vector<Scalar> value(n_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) value[basis_[i]] = t_[i][n_];
    std::vector<Scalar> x(dim_);
    for (std::size_t k = 0; k < dim_; ++k) x[k] = value[k] - value[dim_ + k];
    return x;
  }

 private:
  void load_costs(const std::vector<Scalar>& c) {
    z_.assign(n_ + 1, Scalar(0));
    for (std::size_t j = 0; j < n_; ++j) z_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Scalar& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Scalar p = t_[r][c];
    for (auto& v : t_[r]) {
      if (v != 0) v /= p;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Scalar f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j) {
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    if (z_.size() == n_ + 1 && z_[c] != 0) {
      Scalar f = z_[c];
      for (std::size_t j = 0; j <= n_; ++j) {
        if (t_[r][j] != 0) z_[j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Columns >= limit may not enter.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Scalar best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Scalar ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  std::size_t dim_, m_, n_struct_ = 0, n_ = 0;
  std::vector<std::vector<Scalar>> t_;
  std::vector<Scalar> z_;
  std::vector<Scalar> cost_;
  std::vector<std::size_t> basis_;
};

bool use_fm(const LinearSystem& system, LpMethod method) {
  if (method == LpMethod::simplex) return false;
  if (method == LpMethod::fourier_motzkin) return true;
  return system.dim <= kFmMaxDim && system.rows.size() <= kFmMaxRows;
}

std::optional<std::vector<Scalar>> simplex_feasible(const LinearSystem& system) {
  g_last_route = LpMethod::simplex;
  Simplex s(system, nullptr);
  if (!s.phase_one()) return std::nullopt;
  return s.point();
}

}  // namespace

bool satisfies(const LinearSystem& system, const std::vector<Scalar>& x) {
  if (x.size() != system.dim) return false;
  for (const auto& row : system.rows) {
    if (dot(row.a, x) > row.b) return false;
  }
  return true;
}

LpMethod last_lp_route() { return g_last_route; }

std::optional<std::vector<Scalar>> find_feasible_point(const LinearSystem& system, LpMethod method) {
  check_shape(system);
  std::optional<std::vector<Scalar>> x;
  if (use_fm(system, method)) {
    try {
      g_last_route = LpMethod::fourier_motzkin;
      x = fourier_motzkin(system, std::nullopt);
    } catch (const FmBlowup&) {
      x = simplex_feasible(system);
    }
  } else {
    x = simplex_feasible(system);
  }
  if (x && !satisfies(system, *x)) {
    throw Error(ErrorCode::OracleFailure, "LP kernel produced a point violating its own constraints");
  }
  return x;
}

std::optional<LpMinimum> minimize(const LinearSystem& system, const std::vector<Scalar>& objective,
                                  LpMethod method) {
  check_shape(system);
  if (objective.size() != system.dim) throw Error(ErrorCode::DimMismatch, "objective length");
  std::optional<LpMinimum> result;
  auto via_simplex = [&]() -> std::optional<LpMinimum> {
    g_last_route = LpMethod::simplex;
    Simplex s(system, &objective);
    if (!s.phase_one()) return std::nullopt;
    if (!s.phase_two()) throw Error(ErrorCode::ParamOutOfRange, "objective unbounded below");
    LpMinimum out{s.point(), 0};
    out.value = dot(objective, out.point);
    return out;
  };
  if (use_fm(system, method)) {
    // Append t = objective . x and eliminate t last.
    LinearSystem lifted{system.dim + 1, {}};
    lifted.rows.reserve(system.rows.size() + 2);
    for (const auto& row : system.rows) {
      LinearRow r{row.a, row.b};
      r.a.push_back(0);
      lifted.rows.push_back(std::move(r));
    }
    LinearRow up{objective, 0}, down{std::vector<Scalar>(system.dim), 0};
    up.a.push_back(-1);
    for (std::size_t k = 0; k < system.dim; ++k) down.a[k] = -objective[k];
    down.a.push_back(1);
    lifted.rows.push_back(std::move(up));
    lifted.rows.push_back(std::move(down));
    try {
      g_last_route = LpMethod::fourier_motzkin;
      auto x = fourier_motzkin(lifted, system.dim);
      if (x) {
        Scalar t = (*x)[system.dim];
        x->pop_back();
        result = LpMinimum{*x, t};
      }
    } catch (const FmBlowup&) {
      result = via_simplex();
    }
  } else {
    result = via_simplex();
  }
  if (result && !satisfies(system, result->point)) {
    throw Error(ErrorCode::OracleFailure, "LP kernel produced a point violating its own constraints");
  }
  return result;
}

}  // namespace hyperball
