#include <algorithm>
#include <climits>
#include <string>
#include <thread>

#include "hyperball/error.hpp"
#include "hyperball/lab.hpp"
#include "hyperball/rng.hpp"

namespace hyperball {

namespace {

constexpr std::uint64_t kChunk = 256;

// Window used for coordinates along which A is unbounded.
constexpr long kUnboundedHalfWidth = 8;

// Union of boxes with all data multiplied by `scale`; every quantity the
// sampler forms from grid points and box bounds is then an integer.
struct ScaledBoxes {
  struct Piece {
    std::vector<std::optional<std::int64_t>> lo, hi;
  };
  Scalar scale;
  std::int64_t step = 0;
  std::vector<std::int64_t> window_lo;
  std::vector<Piece> pieces;
};

// Everything about A the sampler needs, computed once per search.
class SubsetGeometry {
 public:
  explicit SubsetGeometry(const Region& a) : a_(a) {
    for (const auto& piece : a.pieces) {
      if (!lp_feasible(piece)) continue;
      pieces_.push_back(piece);
      if (piece.is_box()) {
        boxes_.push_back(as_box(piece));
      } else {
        boxes_.push_back(std::nullopt);
      }
    }
    if (pieces_.empty()) throw Error(ErrorCode::EmptySet, "refute_search needs a non-empty subset");
    bounding_window();
    scale_boxes();
  }

  std::size_t dim() const { return a_.dim; }
  const Scalar& diameter() const { return diameter_; }
  const Scalar& step() const { return step_; }
  const Box& window() const { return window_; }
  // Number of grid steps across the window along k, and across [0, diameter].
  std::uint64_t steps(std::size_t k) const { return steps_[k]; }
  std::uint64_t radius_steps() const { return radius_steps_; }
  const std::optional<ScaledBoxes>& scaled() const { return scaled_; }

  Projection project(const LinfPoint& x) const {
    std::optional<Projection> best;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      Projection p = boxes_[i] ? clamp_onto(*boxes_[i], x) : dist_to_polyhedron(x, pieces_[i]);
      if (!best || p.distance < best->distance) best = std::move(p);
      if (best->distance == 0) break;
    }
    return *best;
  }

  bool meets(const std::vector<Ball>& balls) const {
    for (const auto& piece : pieces_) {
      if (lp_feasible(piece, balls)) return true;
    }
    return false;
  }

 private:
  // Box with possibly infinite sides, encoded with flags.
  struct HalfOpenBox {
    std::vector<std::optional<Scalar>> lo, hi;
  };

  static HalfOpenBox as_box(const HPolyhedron& p) {
    HalfOpenBox b{std::vector<std::optional<Scalar>>(p.dim), std::vector<std::optional<Scalar>>(p.dim)};
    for (const auto& row : p.rows) {
      for (std::size_t k = 0; k < p.dim; ++k) {
        if (row.a[k] == 0) continue;
        Scalar bound = row.b / row.a[k];
        if (row.a[k] > 0) {
          if (!b.hi[k] || bound < *b.hi[k]) b.hi[k] = bound;
        } else if (!b.lo[k] || bound > *b.lo[k]) {
          b.lo[k] = bound;
        }
      }
    }
    return b;
  }

  static Projection clamp_onto(const HalfOpenBox& b, const LinfPoint& x) {
    Projection out{Scalar(0), x};
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (b.lo[k] && x[k] < *b.lo[k]) out.nearest[k] = *b.lo[k];
      else if (b.hi[k] && x[k] > *b.hi[k]) out.nearest[k] = *b.hi[k];
      else continue;
      Scalar gap = abs(x[k] - out.nearest[k]);
      if (gap > out.distance) out.distance = gap;
    }
    return out;
  }

  void bounding_window() {
    const std::size_t dim = a_.dim;
    std::vector<Scalar> lo(dim), hi(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::optional<Scalar> kmin, kmax;
      bool unbounded_below = false, unbounded_above = false;
      std::vector<Scalar> e(dim, Scalar(0));
      for (const auto& piece : pieces_) {
        e[k] = 1;
        try {
          auto m = minimize(piece.system(), e);
          if (m && (!kmin || m->value < *kmin)) kmin = m->value;
        } catch (const Error&) {
          unbounded_below = true;
        }
        e[k] = -1;
        try {
          auto m = minimize(piece.system(), e);
          if (m && (!kmax || -m->value > *kmax)) kmax = -m->value;
        } catch (const Error&) {
          unbounded_above = true;
        }
      }
      if (unbounded_below) kmin.reset();
      if (unbounded_above) kmax.reset();
      const Scalar w(kUnboundedHalfWidth);
      if (kmin && kmax) {
        lo[k] = *kmin;
        hi[k] = *kmax;
      } else if (kmin) {
        lo[k] = *kmin;
        hi[k] = *kmin + 2 * w;
      } else if (kmax) {
        lo[k] = *kmax - 2 * w;
        hi[k] = *kmax;
      } else {
        lo[k] = -w;
        hi[k] = w;
      }
    }
    diameter_ = 0;
    for (std::size_t k = 0; k < dim; ++k) diameter_ = max(diameter_, hi[k] - lo[k]);
    if (diameter_ == 0) diameter_ = 1;
    step_ = dyadic_floor(diameter_ / 16);
    window_.lo.resize(dim);
    window_.hi.resize(dim);
    steps_.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      window_.lo[k] = lo[k] - diameter_;
      window_.hi[k] = hi[k] + diameter_;
      steps_[k] = grid_steps(window_.hi[k] - window_.lo[k]);
    }
    radius_steps_ = grid_steps(diameter_);
  }

  std::uint64_t grid_steps(const Scalar& width) const {
    Scalar count_q = width / step_;
    mpz_class count = count_q.get_num() / count_q.get_den();
    return count.get_ui();
  }

  // Integer copy of the window and the box pieces, scaled by the common
  // denominator. Skipped when some piece is not a box or values get large.
  void scale_boxes() {
    for (const auto& b : boxes_) {
      if (!b) return;
    }
    mpz_class l = step_.get_den();
    auto absorb = [&](const Scalar& v) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t()); };
    for (std::size_t k = 0; k < a_.dim; ++k) absorb(window_.lo[k]);
    for (const auto& b : boxes_) {
      for (std::size_t k = 0; k < a_.dim; ++k) {
        if (b->lo[k]) absorb(*b->lo[k]);
        if (b->hi[k]) absorb(*b->hi[k]);
      }
    }
    const Scalar scale(l);
    const mpz_class limit = mpz_class(1) << 40;
    bool fits = true;
    auto to_int = [&](const Scalar& v) -> std::int64_t {
      Scalar x = v * scale;
      if (abs(x.get_num()) >= limit) fits = false;
      return fits ? x.get_num().get_si() : 0;
    };
    ScaledBoxes out;
    out.scale = scale;
    out.step = to_int(step_);
    for (std::size_t k = 0; k < a_.dim; ++k) {
      out.window_lo.push_back(to_int(window_.lo[k]));
      if (abs(Scalar(window_.hi[k] * scale).get_num()) >= limit) fits = false;
    }
    if (abs(Scalar((diameter_ * 4) * scale).get_num()) >= limit) fits = false;
    for (const auto& b : boxes_) {
      ScaledBoxes::Piece piece;
      for (std::size_t k = 0; k < a_.dim; ++k) {
        piece.lo.push_back(b->lo[k] ? std::optional<std::int64_t>(to_int(*b->lo[k])) : std::nullopt);
        piece.hi.push_back(b->hi[k] ? std::optional<std::int64_t>(to_int(*b->hi[k])) : std::nullopt);
      }
      out.pieces.push_back(std::move(piece));
    }
    if (fits) scaled_ = std::move(out);
  }

  const Region& a_;
  std::vector<HPolyhedron> pieces_;
  std::vector<std::optional<HalfOpenBox>> boxes_;
  Box window_;
  Scalar diameter_, step_;
  std::vector<std::uint64_t> steps_;
  std::uint64_t radius_steps_ = 0;
  std::optional<ScaledBoxes> scaled_;
};

bool is_external(RefuteVariant variant, std::size_t i) {
  return variant == RefuteVariant::external || (variant == RefuteVariant::weakly_external && i == 0);
}

struct Sample {
  std::vector<Ball> balls;
};

Sample draw(const SubsetGeometry& geo, const RefuteConfig& config, Rng& rng) {
  const std::size_t n = config.level;
  const std::size_t dim = geo.dim();
  Sample s;
  s.balls.resize(n);
  std::vector<Scalar> floor_radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    LinfPoint p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p[k] = geo.window().lo[k] + geo.step() * Scalar(static_cast<unsigned long>(rng.below(geo.steps(k) + 1)));
    }
    const bool external = is_external(config.variant, i);
    Projection proj = geo.project(p);
    if (external) {
      floor_radius[i] = proj.distance;
      s.balls[i].center = std::move(p);
    } else {
      floor_radius[i] = 0;
      s.balls[i].center = std::move(proj.nearest);
    }
    s.balls[i].radius = floor_radius[i] + geo.step() * Scalar(static_cast<unsigned long>(rng.below(geo.radius_steps() + 1)));
  }
  // Shrink radii one at a time to the least admissible value.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (std::size_t i : order) {
    Scalar r = floor_radius[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Scalar need = linf_dist(s.balls[i].center, s.balls[j].center) - s.balls[j].radius;
      if (need > r) r = need;
    }
    s.balls[i].radius = r;
  }
  return s;
}

struct IntBall {
  std::vector<std::int64_t> center;
  std::int64_t radius = 0;
};

std::int64_t int_dist(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  std::int64_t d = 0;
  for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, x[k] > y[k] ? x[k] - y[k] : y[k] - x[k]);
  return d;
}

// Same random stream and the same decisions as draw(), on scaled integers.
std::vector<IntBall> draw_scaled(const SubsetGeometry& geo, const ScaledBoxes& sb, const RefuteConfig& config,
                                 Rng& rng) {
  const std::size_t n = config.level;
  const std::size_t dim = geo.dim();
  std::vector<IntBall> balls(n);
  std::vector<std::int64_t> floor_radius(n);
  std::vector<std::int64_t> nearest(dim), best_nearest(dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p[k] = sb.window_lo[k] + sb.step * static_cast<std::int64_t>(rng.below(geo.steps(k) + 1));
    }
    std::int64_t best = -1;
    for (const auto& piece : sb.pieces) {
      std::int64_t dist = 0;
      for (std::size_t k = 0; k < dim; ++k) {
        nearest[k] = p[k];
        if (piece.lo[k] && p[k] < *piece.lo[k]) nearest[k] = *piece.lo[k];
        else if (piece.hi[k] && p[k] > *piece.hi[k]) nearest[k] = *piece.hi[k];
        dist = std::max(dist, p[k] > nearest[k] ? p[k] - nearest[k] : nearest[k] - p[k]);
      }
      if (best < 0 || dist < best) {
        best = dist;
        best_nearest = nearest;
      }
      if (best == 0) break;
    }
    if (is_external(config.variant, i)) {
      floor_radius[i] = best;
      balls[i].center = std::move(p);
    } else {
      floor_radius[i] = 0;
      balls[i].center = best_nearest;
    }
    balls[i].radius = floor_radius[i] + sb.step * static_cast<std::int64_t>(rng.below(geo.radius_steps() + 1));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (std::size_t i : order) {
    std::int64_t r = floor_radius[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) r = std::max(r, int_dist(balls[i].center, balls[j].center) - balls[j].radius);
    }
    balls[i].radius = r;
  }
  return balls;
}

bool scaled_meets(const ScaledBoxes& sb, const std::vector<IntBall>& balls) {
  const std::size_t dim = sb.window_lo.size();
  for (const auto& piece : sb.pieces) {
    bool ok = true;
    for (std::size_t k = 0; k < dim && ok; ++k) {
      std::int64_t lo = INT64_MIN, hi = INT64_MAX;
      if (piece.lo[k]) lo = *piece.lo[k];
      if (piece.hi[k]) hi = *piece.hi[k];
      for (const auto& b : balls) {
        lo = std::max(lo, b.center[k] - b.radius);
        hi = std::min(hi, b.center[k] + b.radius);
      }
      ok = lo <= hi;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<Ball> unscale(const ScaledBoxes& sb, const std::vector<IntBall>& balls) {
  std::vector<Ball> out;
  for (const auto& b : balls) {
    Ball ball;
    for (auto c : b.center) ball.center.push_back(Scalar(static_cast<long>(c)) / sb.scale);
    ball.radius = Scalar(static_cast<long>(b.radius)) / sb.scale;
    out.push_back(std::move(ball));
  }
  return out;
}

Json make_certificate(const RefuteConfig& config, const std::vector<Ball>& balls, std::uint64_t index) {
  Json family = Json::array();
  for (const auto& b : balls) family.push_back(to_json(b));
  return {{"variant", std::string(to_string(config.variant))},
          {"level", balls.size()},
          {"family", family},
          {"sample", index}};
}

struct ChunkResult {
  std::optional<Json> certificate;
  std::uint64_t first_hit = 0;  // index within the chunk
  std::vector<std::string> warnings;
};

ChunkResult run_chunk(const Region& a, const SubsetGeometry& geo, const RefuteConfig& config, std::uint64_t chunk,
                      std::uint64_t count) {
  ChunkResult out;
  Rng rng(derive_seed(config.seed, chunk));
  const ScaledBoxes* sb = config.allow_integer_path && geo.scaled() ? &*geo.scaled() : nullptr;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<Ball> balls;
    if (sb) {
      auto scaled = draw_scaled(geo, *sb, config, rng);
      if (scaled_meets(*sb, scaled)) continue;
      balls = unscale(*sb, scaled);
    } else {
      Sample s = draw(geo, config, rng);
      if (geo.meets(s.balls)) continue;
      balls = std::move(s.balls);
    }
    Json cert = make_certificate(config, balls, chunk * kChunk + i);
    if (!verify_refutation(a, cert)) {
      out.warnings.push_back("candidate at sample " + std::to_string(chunk * kChunk + i) +
                             " failed independent re-verification; skipped");
      continue;
    }
    out.certificate = std::move(cert);
    out.first_hit = i;
    return out;
  }
  return out;
}

bool admissible_for(const Region& a, const std::vector<Ball>& balls, RefuteVariant variant) {
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].radius < 0) return false;
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (linf_dist(balls[i].center, balls[j].center) > balls[i].radius + balls[j].radius) return false;
    }
    if (is_external(variant, i)) {
      if (dist_to_region(balls[i].center, a).distance > balls[i].radius) return false;
    } else if (!a.contains(balls[i].center)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(RefuteVariant variant) {
  switch (variant) {
    case RefuteVariant::plain: return "plain";
    case RefuteVariant::external: return "external";
    case RefuteVariant::weakly_external: return "weakly_external";
  }
  return "external";
}

std::optional<RefuteVariant> refute_variant_from_string(std::string_view name) {
  for (auto v : {RefuteVariant::plain, RefuteVariant::external, RefuteVariant::weakly_external}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

std::vector<Ball> certificate_balls(const Json& certificate) {
  std::vector<Ball> balls;
  for (const auto& b : certificate.at("family")) {
    balls.push_back({b.at("center").get<LinfPoint>(), b.at("r").get<Scalar>()});
  }
  return balls;
}

bool verify_refutation(const Region& a, const Json& certificate) {
  auto variant = refute_variant_from_string(certificate.at("variant").get<std::string>());
  if (!variant) return false;
  std::vector<Ball> balls = certificate_balls(certificate);
  if (balls.empty()) return false;
  for (const auto& b : balls) {
    if (b.dim() != a.dim) return false;
  }
  if (!admissible_for(a, balls, *variant)) return false;
  for (const auto& piece : a.pieces) {
    if (lp_feasible(piece, balls, LpMethod::simplex)) return false;
  }
  return true;
}

Json pad_refutation(const Json& certificate, std::size_t level) {
  Json out = certificate;
  while (out["family"].size() < level) out["family"].push_back(out["family"].back());
  out["level"] = out["family"].size();
  return out;
}

PropertyReport refute_search(const Region& a, const RefuteConfig& config) {
  PropertyReport report;
  report.check = "refute_search";
  report.seed = config.seed;
  report.certificate = {{"variant", std::string(to_string(config.variant))}, {"level", config.level}};
  if (config.level < 1) throw Error(ErrorCode::ParamOutOfRange, "level must be at least 1");
  if (config.budget == 0) {
    report.certificate["reason"] = "budget exhausted";
    return report;
  }
  SubsetGeometry geo(a);

  const std::uint64_t chunks = (config.budget + kChunk - 1) / kChunk;
  const unsigned threads = std::max(1u, config.threads);
  for (std::uint64_t base = 0; base < chunks; base += threads) {
    const std::uint64_t wave = std::min<std::uint64_t>(threads, chunks - base);
    std::vector<ChunkResult> results(wave);
    auto work = [&](std::uint64_t w) {
      const std::uint64_t c = base + w;
      const std::uint64_t count = std::min(kChunk, config.budget - c * kChunk);
      results[w] = run_chunk(a, geo, config, c, count);
    };
    if (wave == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::uint64_t w = 0; w < wave; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (std::uint64_t w = 0; w < wave; ++w) {
      auto& r = results[w];
      report.warnings.insert(report.warnings.end(), r.warnings.begin(), r.warnings.end());
      if (r.certificate) {
        report.verdict = Verdict::refuted;
        report.checked = (base + w) * kChunk + r.first_hit + 1;
        report.certificate = std::move(*r.certificate);
        return report;
      }
    }
  }
  report.checked = config.budget;
  report.certificate["reason"] = "no refutation found";
  return report;
}

PropertyReport four_to_n_consistency(const Region& a, std::size_t n_max, std::uint64_t budget, std::uint64_t seed,
                                     RefuteVariant variant, unsigned threads) {
  PropertyReport report;
  report.check = "four_to_n_consistency";
  report.seed = seed;
  Json levels = Json::array();
  std::optional<std::size_t> first_refuted;
  Json first_certificate;
  for (std::size_t level = 2; level <= n_max; ++level) {
    RefuteConfig cfg{level, budget, derive_seed(seed, level), variant, threads};
    PropertyReport r = refute_search(a, cfg);
    report.checked += r.checked;
    levels.push_back({{"level", level}, {"verdict", std::string(to_string(r.verdict))}, {"checked", r.checked}});
    if (r.refuted() && !first_refuted) {
      first_refuted = level;
      first_certificate = r.certificate;
    }
  }
  report.certificate["levels"] = levels;
  std::string status = "consistent";
  if (first_refuted) {
    report.certificate["first_refuted_level"] = *first_refuted;
    // Ladder: the first refutation stays a refutation at every higher level.
    bool ladder = true;
    for (std::size_t level = *first_refuted; level <= n_max; ++level) {
      ladder = ladder && verify_refutation(a, pad_refutation(first_certificate, level));
    }
    report.certificate["ladder_verified"] = ladder;
    if (!ladder) status = "LADDER-FAILURE";
    if (*first_refuted > 4) {
      // Look for a sub-family of at most four balls that already refutes.
      const auto balls = certificate_balls(first_certificate);
      const std::size_t m = balls.size();
      std::optional<Json> reduced;
      for (std::uint32_t mask = 1; mask < (1u << m) && !reduced; ++mask) {
        if (__builtin_popcount(mask) > 4) continue;
        Json sub = first_certificate;
        sub["family"] = Json::array();
        for (std::size_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) sub["family"].push_back(first_certificate["family"][i]);
        }
        if (variant == RefuteVariant::weakly_external && !(mask & 1u)) sub["variant"] = "plain";
        sub["level"] = sub["family"].size();
        if (verify_refutation(a, sub)) reduced = sub;
      }
      if (reduced) {
        report.certificate["reduced"] = *reduced;
      } else {
        status = "THEOREM-INCONSISTENT";
        report.certificate["unreduced"] = first_certificate;
      }
    }
  }
  report.certificate["status"] = status;
  report.verdict = status == "consistent" ? Verdict::inconclusive : Verdict::refuted;
  if (budget == 0) report.certificate["reason"] = "budget exhausted";
  return report;
}

}  // namespace hyperball
