#include "hyperball/ip.hpp"

#include <string>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

// All index subsets of {0..n-1} with the given size, in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Ball> pick(const std::vector<Ball>& balls, const std::vector<std::size_t>& idx) {
  std::vector<Ball> out;
  for (auto i : idx) out.push_back(balls[i]);
  return out;
}

Box intersection_box(const std::vector<Ball>& balls) {
  Box b{std::vector<Scalar>(balls.front().dim()), std::vector<Scalar>(balls.front().dim())};
  for (std::size_t k = 0; k < b.lo.size(); ++k) {
    for (std::size_t i = 0; i < balls.size(); ++i) {
      Scalar lo = balls[i].center[k] - balls[i].radius, hi = balls[i].center[k] + balls[i].radius;
      if (i == 0 || lo > b.lo[k]) b.lo[k] = lo;
      if (i == 0 || hi < b.hi[k]) b.hi[k] = hi;
    }
  }
  return b;
}

Scalar max_dist_to_subfamilies(const LinfPoint& p, const std::vector<Ball>& balls,
                               const std::vector<std::vector<std::size_t>>& js) {
  Scalar r = 0;
  for (const auto& j : js) r = max(r, dist_to_box(intersection_box(pick(balls, j)), p));
  return r;
}

}  // namespace

std::size_t ip_threshold(std::size_t k) {
  if (k < 2) throw Error(ErrorCode::KTooSmall, "k must be at least 2", {k});
  for (std::size_t n = k;; ++n) {
    const std::size_t lhs = 2 * (n - k + 2) * (n - k + 1);
    if (lhs > n * (n + 1)) return n;
  }
}

IPParams ip_constants(std::size_t n, std::size_t k, const Scalar& eps) {
  if (k < 2) throw Error(ErrorCode::KTooSmall, "k must be at least 2", {k});
  if (k > n) throw Error(ErrorCode::ParamOutOfRange, "need k <= n", {n, k});
  if (eps < 0) throw Error(ErrorCode::ParamOutOfRange, "eps must be non-negative");
  IPParams p;
  p.n = n;
  p.k = k;
  p.eps = eps;
  // alpha ranges over (n-1)-subsets of {0..n}, i.e. complements of pairs {a, b};
  // J = {0..k-2} lies in alpha iff neither a nor b is in J.
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      ++p.big_n;
      if (a >= k - 1 && b >= k - 1) ++p.big_n_prime;
    }
  }
  const Scalar one_plus = Scalar(1) + eps;
  p.c = Scalar(static_cast<unsigned long>(2 * (p.big_n - p.big_n_prime)), static_cast<unsigned long>(p.big_n)) *
        one_plus * one_plus;
  p.c.canonicalize();
  return p;
}

Scalar ip_default_eps(std::size_t n, std::size_t k) {
  const Scalar c0 = ip_constants(n, k, Scalar(0)).c;
  if (c0 >= 1) {
    throw Error(ErrorCode::ContractionNotGuaranteed,
                "c = " + format_scalar(c0) + " is not below 1 for n = " + std::to_string(n) + ", k = " + std::to_string(k),
                {n, k});
  }
  const Scalar target = (1 + c0) / 2;
  for (long j = 1;; ++j) {
    const Scalar eps = pow2(-j);
    if (ip_constants(n, k, eps).c <= target) return eps;
  }
}

IntersectionOracle clamp_intersection_oracle() {
  return [](const std::vector<Ball>& balls, const LinfPoint& query) -> std::optional<LinfPoint> {
    Box b = intersection_box(balls);
    if (b.empty()) return std::nullopt;
    return box_retraction(b, query);
  };
}

IpLiftResult ip_lift(const std::vector<Ball>& balls, std::size_t k, const IpLiftConfig& config,
                     const IntersectionOracle& oracle) {
  if (balls.size() < 3) throw Error(ErrorCode::ParamOutOfRange, "need at least three balls");
  const std::size_t n = balls.size() - 1;
  const std::size_t dim = balls.front().dim();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].dim() != dim) throw Error(ErrorCode::DimMismatch, "balls of different dimensions", {i});
    if (balls[i].radius < 0) throw Error(ErrorCode::ParamOutOfRange, "negative radius", {i});
  }
  IpLiftResult out;
  const Scalar eps = config.eps ? *config.eps : ip_default_eps(n, k);
  out.params = ip_constants(n, k, eps);
  if (out.params.c >= 1) {
    throw Error(ErrorCode::ContractionNotGuaranteed, "c = " + format_scalar(out.params.c) + " is not below 1", {n, k});
  }
  const bool iterating = config.barycenter.method == BarycenterConfig::Method::iterate;
  if (iterating && out.params.big_n > 6) {
    throw Error(ErrorCode::TupleTooLarge, "iterated barycenter of " + std::to_string(out.params.big_n) + " points",
                {out.params.big_n});
  }
  for (const auto& sub : subsets(n + 1, k)) {
    if (intersection_box(pick(balls, sub)).empty()) {
      throw Error(ErrorCode::KSubfamilyEmpty, "a k-subfamily has empty intersection", sub);
    }
  }
  const auto js = subsets(n + 1, k - 1);
  std::vector<std::vector<std::size_t>> omega;
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) {
      std::vector<std::size_t> alpha;
      for (std::size_t i = 0; i <= n; ++i) {
        if (i != a && i != b) alpha.push_back(i);
      }
      omega.push_back(std::move(alpha));
    }
  }
  const Scalar big_n(static_cast<unsigned long>(out.params.big_n));
  const Scalar lift_factor =
      Scalar(static_cast<unsigned long>(out.params.big_n - out.params.big_n_prime)) / big_n * 2 * (1 + eps) * (1 + eps);
  const Scalar tau = iterating ? config.barycenter.tau : Scalar(0);
  auto bar = [&](const std::vector<LinfPoint>& pts) { return barycenter_linf(BackendKind::dyadic, pts, config.barycenter); };

  std::vector<LinfPoint> centres;
  for (const auto& b : balls) centres.push_back(b.center);
  LinfPoint p = LinfBicombing{}.mean(centres);
  out.radius = max_dist_to_subfamilies(p, balls, js);

  RefinementTrace& t = out.trace;
  t.scheme = Scheme::ip_lift;
  t.params.rate = out.params.c;
  t.params.radius = out.radius;
  t.params.tau = tau;
  if (out.radius == 0) {
    t.iterates.push_back(p);
  }
  for (std::size_t j = 0; j < config.rounds && out.radius > 0; ++j) {
    const Scalar rj = max_dist_to_subfamilies(p, balls, js);
    out.round_radii.push_back(rj);
    if (rj == 0) {
      t.iterates.push_back(p);
    } else {
      const Ball outer{p, (1 + eps) * rj};
      std::vector<LinfPoint> ys;
      for (const auto& alpha : omega) {
        std::vector<Ball> fam = pick(balls, alpha);
        fam.push_back(outer);
        auto y = oracle(fam, p);
        if (!y) throw Error(ErrorCode::OracleFailure, "witness provider found no point", {j});
        for (std::size_t i = 0; i < fam.size(); ++i) {
          if (!fam[i].contains(*y)) {
            throw Error(ErrorCode::OracleFailure, "witness misses ball " + std::to_string(i), {j, i});
          }
        }
        ys.push_back(std::move(*y));
      }
      const LinfPoint y = bar(ys);
      Scalar gap = 0;
      for (const auto& jset : js) {
        std::vector<Ball> fam = pick(balls, jset);
        fam.push_back(outer);
        const Box target = intersection_box(fam);
        std::vector<LinfPoint> zs;
        for (const auto& ya : ys) zs.push_back(box_retraction(target, ya));
        gap = max(gap, linf_dist(y, bar(zs)));
      }
      out.lift_gaps.push_back(gap);
      if (gap > lift_factor * rj + 2 * tau) {
        out.warnings.push_back("round " + std::to_string(j) + ": lifted point farther than the averaging bound");
      }
      p = y;
      t.iterates.push_back(p);
    }
    if (t.iterates.size() >= 2) {
      t.step_distances.push_back(linf_dist(t.iterates[t.iterates.size() - 2], t.iterates.back()));
    }
  }
  out.point = p;
  out.final_violation = 0;
  for (const auto& b : balls) out.final_violation = max(out.final_violation, linf_dist(p, b.center) - b.radius);
  out.report = verify_trace(t, Scheme::ip_lift);
  out.report.warnings.insert(out.report.warnings.end(), out.warnings.begin(), out.warnings.end());
  return out;
}

Json to_json(const IPParams& p) {
  return {{"n", p.n}, {"k", p.k}, {"N", p.big_n}, {"N_prime", p.big_n_prime}, {"eps", p.eps}, {"c", p.c}};
}

}  // namespace hyperball
