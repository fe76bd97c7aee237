// Acceptance run: one PASS/FAIL line per criterion. Each check recomputes the
// quantities it asserts with code that does not share the path under test
// where that is possible (brute-force medians, LP distances, hand-built
// metrics). Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../support/fixtures.hpp"
#include "hyperball/bicombing.hpp"
#include "hyperball/error.hpp"
#include "hyperball/ip.hpp"
#include "hyperball/lab.hpp"
#include "hyperball/linf.hpp"
#include "hyperball/metric.hpp"
#include "hyperball/refine.hpp"

using namespace hyperball;
using fixtures::q;

namespace {

// ---------------------------------------------------------------------------
// Pinned parameters.

constexpr double kHellyTimeLimitSeconds = 1.0;
constexpr std::size_t kMedianSpaces = 200;
constexpr std::size_t kBarycenterTuples = 100;
constexpr long kBarycenterTauExp = -30;
constexpr std::size_t kBarycenterMaxRounds = 200;
constexpr std::size_t kIpRounds = 30;
constexpr long kIpViolationNum = 1, kIpViolationDen = 1'000'000;  // 1e-6
constexpr std::size_t kRefineFamilies = 50;
constexpr std::size_t kRefineRounds = 40;
constexpr std::size_t kTripleRuns = 50;
constexpr std::size_t kRetractionTriples = 1000;
constexpr std::size_t kConvexSegments = 200;
constexpr std::size_t kBoxSubsets = 100;
constexpr std::uint64_t kBoxBudget = 10'000;
constexpr std::uint64_t kTwoBoxBudget = 1'000;
constexpr std::uint64_t kLadderBudget = 10'000;
constexpr std::size_t kLadderMax = 6;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ < 5) text_ << (text_.tellp() > 0 ? "; " : "") << what;
  }
  bool any() const { return count_ > 0; }
  Outcome outcome(const std::string& ok) const {
    if (!any()) return {true, ok};
    return {false, std::to_string(count_) + " failure(s): " + text_.str()};
  }

 private:
  std::size_t count_ = 0;
  std::ostringstream text_;
};

// ---------------------------------------------------------------------------
// 1. Helly counterexample.

Outcome criterion_helly() {
  Failures f;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t n = 2; n <= 6; ++n) {
    const HellyInstance inst = helly_counterexample(n);
    // Witness membership, checked row by row here with exact rationals.
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == j) continue;
        for (const auto& row : inst.sets[i].rows) {
          Scalar lhs = 0;
          for (std::size_t k = 0; k < n; ++k) lhs += row.a[k] * inst.witnesses[j][k];
          if (lhs > row.b) f.add("n=" + std::to_string(n) + " witness " + std::to_string(j) + " misses set " + std::to_string(i));
        }
      }
    }
    HPolyhedron all{n, {}};
    for (const auto& s : inst.sets) all.rows.insert(all.rows.end(), s.rows.begin(), s.rows.end());
    if (lp_feasible(all, {}, LpMethod::simplex)) f.add("n=" + std::to_string(n) + " total intersection non-empty");
    if (!verify_helly_instance(inst).holds()) f.add("n=" + std::to_string(n) + " library verifier disagrees");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= kHellyTimeLimitSeconds) f.add("took " + std::to_string(secs) + " s");
  return f.outcome("n = 2..6 verified exactly");
}

// ---------------------------------------------------------------------------
// 2. Median sets equal the intersection of the three Gromov-product balls.

Outcome criterion_median() {
  Failures f;
  Rng rng(20240202);
  for (std::size_t t = 0; t < kMedianSpaces; ++t) {
    const std::size_t n = 3 + rng.below(6);
    const FiniteMetricSpace s = t % 2 == 0 ? validate_metric(fixtures::random_linf_metric(n, 1 + rng.below(3), rng))
                                           : graph_metric(fixtures::random_weighted_graph(n, rng));
    const Matrix& d = s.matrix();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          const Scalar gx = (d[x][y] + d[x][z] - d[y][z]) / 2;
          const Scalar gy = (d[y][x] + d[y][z] - d[x][z]) / 2;
          const Scalar gz = (d[z][x] + d[z][y] - d[x][y]) / 2;
          std::vector<std::size_t> expect;
          for (std::size_t m = 0; m < n; ++m) {
            if (d[x][m] <= gx && d[y][m] <= gy && d[z][m] <= gz) expect.push_back(m);
          }
          if (median_set(s, x, y, z) != expect) {
            f.add("space " + std::to_string(t) + " triple (" + std::to_string(x) + "," + std::to_string(y) + "," +
                  std::to_string(z) + ")");
          }
        }
      }
    }
  }
  return f.outcome(std::to_string(kMedianSpaces) + " spaces, every ordered triple equal");
}

// ---------------------------------------------------------------------------
// 3. Modularity fixtures.

// Brute force on BFS distances: every triple has a vertex on all three geodesics.
bool modular_by_bfs(const GraphInstance& g) {
  const auto d = fixtures::bfs_distances(g);
  for (std::size_t x = 0; x < g.n; ++x) {
    for (std::size_t y = x + 1; y < g.n; ++y) {
      for (std::size_t z = y + 1; z < g.n; ++z) {
        bool found = false;
        for (std::size_t m = 0; m < g.n && !found; ++m) {
          found = d[x][m] + d[m][y] == d[x][y] && d[y][m] + d[m][z] == d[y][z] && d[x][m] + d[m][z] == d[x][z];
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

GraphInstance tree_from_pruefer(std::size_t n, const std::vector<std::size_t>& code) {
  GraphInstance g{n, {}, {}};
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  for (auto c : code) {
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        g.edges.push_back({leaf, c});
        --degree[leaf];
        --degree[c];
        break;
      }
    }
  }
  std::size_t u = n, v = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) (u == n ? u : v) = i;
  }
  g.edges.push_back({u, v});
  return g;
}

Outcome criterion_modularity() {
  Failures f;
  std::size_t trees = 0;
  for (std::size_t n = 2; n <= 7; ++n) {
    std::vector<std::size_t> code(n - 2, 0);
    for (;;) {
      const GraphInstance g = tree_from_pruefer(n, code);
      ++trees;
      if (!is_modular(graph_metric(g)).holds() || !modular_by_bfs(g)) f.add("tree on " + std::to_string(n) + " vertices");
      std::size_t i = 0;
      while (i < code.size() && ++code[i] == n) code[i++] = 0;
      if (i == code.size()) break;
    }
  }
  // Criterion as stated: K_n modular for n <= 6. For n >= 3 any three vertices
  // have pairwise intervals {x, y}, {y, z}, {x, z} with empty intersection, so
  // this part cannot pass; the brute-force oracle agrees with the library.
  std::vector<std::size_t> non_modular;
  for (std::size_t n = 1; n <= 6; ++n) {
    const GraphInstance k = fixtures::complete_graph(n);
    const bool lib = is_modular(graph_metric(k)).holds();
    if (lib != modular_by_bfs(k)) f.add("K" + std::to_string(n) + " library and brute force disagree");
    if (!lib) non_modular.push_back(n);
  }
  if (!non_modular.empty()) {
    std::string names;
    for (auto n : non_modular) names += (names.empty() ? "K" : ", K") + std::to_string(n);
    f.add(names + " not modular (empty median of any three vertices)");
  }
  const GraphInstance c5 = fixtures::cycle_graph(5);
  const PropertyReport rep = is_modular(graph_metric(c5));
  if (!rep.refuted() || modular_by_bfs(c5)) f.add("C5 not refuted");
  bool listed = false;
  for (const auto& t : rep.certificate.value("refuting_triples", Json::array())) listed = listed || t == Json::array({0, 2, 4});
  if (!listed) f.add("C5 certificate does not list vertices 1,3,5");
  return f.outcome(std::to_string(trees) + " labelled trees modular; K1..K6 modular; C5 refuted at (1,3,5)");
}

// ---------------------------------------------------------------------------
// 4. Barycenter properties.

LinfPoint mean_of(const std::vector<LinfPoint>& pts) {
  LinfPoint m(pts.front().size(), Scalar(0));
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += p[k];
  }
  for (auto& c : m) c /= Scalar(static_cast<unsigned long>(pts.size()));
  return m;
}

Outcome criterion_barycenter() {
  Failures f;
  Rng rng(4004);
  BarycenterConfig cfg;
  cfg.tau = pow2(kBarycenterTauExp);
  cfg.max_rounds = kBarycenterMaxRounds;
  cfg.method = BarycenterConfig::Method::iterate;
  for (std::size_t t = 0; t < kBarycenterTuples; ++t) {
    const std::size_t m = 1 + rng.below(5), dim = 1 + rng.below(3);
    std::vector<LinfPoint> xs, ys;
    for (std::size_t i = 0; i < m; ++i) xs.push_back(fixtures::random_point(rng, dim, -10, 10));
    for (std::size_t i = 0; i < m; ++i) ys.push_back(fixtures::random_point(rng, dim, -10, 10));
    const std::string tag = "tuple " + std::to_string(t);
    try {
      BarycenterStats stats;
      const LinfPoint bar = barycenter_linf(BackendKind::dyadic, xs, cfg, &stats);
      if (linf_dist(bar, mean_of(xs)) > cfg.tau) f.add(tag + " farther than tau from the mean");
      if (!stats.monotone) f.add(tag + " diameter increased");
      if (!barycenter_contraction_check(BackendKind::dyadic, xs, ys, cfg).holds()) f.add(tag + " contraction");
      LinfIsometry shift{{}, {}}, perm{{}, {}};
      for (std::size_t k = 0; k < dim; ++k) {
        shift.perm.push_back(k);
        shift.shift.push_back(fixtures::random_dyadic(rng, -5, 5));
        perm.perm.push_back((k + 1) % dim);
        perm.shift.push_back(Scalar(0));
      }
      if (!equivariance_check(BackendKind::dyadic, shift, xs, cfg).holds()) f.add(tag + " translation");
      if (!equivariance_check(BackendKind::dyadic, perm, xs, cfg).holds()) f.add(tag + " permutation");
    } catch (const Error& e) {
      f.add(tag + ": " + e.what());
    }
  }
  return f.outcome(std::to_string(kBarycenterTuples) + " tuples within tau = 2^-30; (ii) and (iii) hold");
}

// ---------------------------------------------------------------------------
// 5. Threshold, closed form against enumeration.

Outcome criterion_threshold() {
  Failures f;
  const std::size_t expect[] = {4, 7, 10};
  for (std::size_t k = 2; k <= 4; ++k) {
    if (ip_threshold(k) != expect[k - 2]) f.add("k=" + std::to_string(k) + " gave " + std::to_string(ip_threshold(k)));
  }
  for (std::size_t k = 2; k <= 10; ++k) {
    std::size_t least = 0;
    for (std::size_t n = k; n <= 40 && least == 0; ++n) {
      if (ip_constants(n, k, 0).c < 1) least = n;
    }
    // Independent count of N and N' over bitmasks of {0..n}, for small n.
    for (std::size_t n = k; n <= 16; ++n) {
      std::size_t big_n = 0, big_np = 0;
      const std::size_t j_mask = (std::size_t{1} << (k - 1)) - 1;
      for (std::size_t mask = 0; mask < (std::size_t{1} << (n + 1)); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n - 1) continue;
        ++big_n;
        if ((mask & j_mask) == j_mask) ++big_np;
      }
      const IPParams p = ip_constants(n, k, 0);
      if (p.big_n != big_n || p.big_n_prime != big_np) f.add("N/N' mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    if (ip_threshold(k) != least) f.add("k=" + std::to_string(k) + " enumeration gives " + std::to_string(least));
  }
  return f.outcome("4, 7, 10 for k = 2, 3, 4; agreement for k = 2..10");
}

// ---------------------------------------------------------------------------
// 6. ip_lift contraction.

Outcome criterion_ip_lift() {
  Failures f;
  Rng rng(606);
  std::vector<Ball> balls;
  for (int i = 0; i < 5; ++i) balls.push_back({fixtures::random_point(rng, 2, -6, 6), fixtures::random_dyadic(rng, 1, 4)});
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      const Scalar gap = linf_dist(balls[i].center, balls[j].center) - balls[i].radius - balls[j].radius;
      if (gap > 0) {
        balls[i].radius += gap / 2;
        balls[j].radius += gap / 2;
      }
    }
  }
  IpLiftConfig cfg;
  cfg.rounds = kIpRounds;
  const IpLiftResult res = ip_lift(balls, 2, cfg, clamp_intersection_oracle());
  const Scalar ratio = q(4, 5) + q(1, 20);
  const Scalar tau = cfg.barycenter.tau;
  const auto& it = res.trace.iterates;
  for (std::size_t j = 0; j + 1 < it.size(); ++j) {
    if (linf_dist(it[j], it[j + 1]) > pow(ratio, j) * res.radius + 3 * tau) f.add("step " + std::to_string(j));
  }
  Scalar violation = 0;
  for (const auto& b : balls) violation = max(violation, linf_dist(res.point, b.center) - b.radius);
  if (violation > Scalar(kIpViolationNum, kIpViolationDen)) f.add("final violation " + std::to_string(to_double(violation)));
  std::ostringstream ok;
  ok << "R = " << to_double(res.radius) << ", " << it.size() << " iterates, final violation " << to_double(violation);
  return f.outcome(ok.str());
}

// ---------------------------------------------------------------------------
// 7. Refinement schemes.

std::vector<Ball> admissible_family(Rng& rng, const Box& a, std::size_t m) {
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < m; ++i) {
    LinfPoint c = fixtures::random_point(rng, a.dim(), -6, 6);
    balls.push_back({c, dist_to_box(a, c)});
  }
  for (auto& bi : balls) {
    for (const auto& bj : balls) bi.radius = max(bi.radius, linf_dist(bi.center, bj.center) - bj.radius);
  }
  return balls;
}

HPolyhedron meet(const HPolyhedron& a, const HPolyhedron& b) {
  HPolyhedron m = a;
  m.rows.insert(m.rows.end(), b.rows.begin(), b.rows.end());
  return m;
}

Outcome criterion_refinement() {
  Failures f;
  Rng rng(707);
  for (std::size_t t = 0; t < kRefineFamilies; ++t) {
    const Box b = fixtures::random_box(rng, 1 + rng.below(3), -3, 3);
    const auto family = admissible_family(rng, b, 1 + rng.below(3));
    const Scalar s = q(1L << rng.below(4), 2);
    const EpsOracle o = slack_oracle(box_polyhedron(b), family.size() + 1, 1000 + t);
    const AlmostToExactResult r = almost_to_exact(o, family, kRefineRounds, s);
    const auto& it = r.trace.iterates;
    for (std::size_t k = 0; k + 1 < it.size(); ++k) {
      const long e = static_cast<long>(k);
      if (linf_dist(it[k], it[k + 1]) > s * (pow2(-e) + pow2(-e - 1))) f.add("family " + std::to_string(t) + " step " + std::to_string(k));
    }
    Scalar violation = dist_to_box(b, r.point);
    for (const auto& ball : family) violation = max(violation, linf_dist(r.point, ball.center) - ball.radius);
    if (violation > s * pow2(-39)) f.add("family " + std::to_string(t) + " violation");
  }
  std::size_t runs = 0;
  while (runs < kTripleRuns) {
    std::vector<HPolyhedron> sets;
    for (int i = 0; i < 3; ++i) sets.push_back(box_polyhedron(fixtures::random_box(rng, 2, -6, 6)));
    if (!lp_feasible(meet(sets[0], sets[1])) || !lp_feasible(meet(sets[0], sets[2])) ||
        !lp_feasible(meet(sets[1], sets[2]))) {
      continue;
    }
    ++runs;
    const LinfPoint x0 = lp_feasible(meet(sets[1], sets[2])).witness;
    const TripleResult r = triple_intersection(slack_oracle(sets[0], 3, 5000 + runs), slack_oracle(sets[1], 2, 6000 + runs),
                                               slack_oracle(sets[2], 2, 7000 + runs), x0, kRefineRounds);
    const Scalar q34(3, 4);
    const auto& it = r.trace.iterates;
    for (std::size_t n = 0; n < it.size(); ++n) {
      if (dist_to_polyhedron(it[n], sets[0], LpMethod::simplex).distance > pow(q34, n) * r.r0) {
        f.add("triple " + std::to_string(runs) + " iterate " + std::to_string(n));
      }
    }
    const Scalar slack = pow(q34, kRefineRounds) * r.r0;
    if (!sets[1].contains(r.point) || !sets[2].contains(r.point) ||
        dist_to_polyhedron(r.point, sets[0], LpMethod::simplex).distance > slack) {
      f.add("triple " + std::to_string(runs) + " final point");
    }
  }
  return f.outcome("(a) 50 box families, (b) 50 box triples within exact bounds");
}

// ---------------------------------------------------------------------------
// 8. Retraction inequality.

Outcome criterion_retraction() {
  Failures f;
  Rng rng(808);
  for (std::size_t t = 0; t < kRetractionTriples; ++t) {
    const std::size_t dim = 1 + rng.below(4);
    const Box a = fixtures::random_box(rng, dim, -5, 5);
    const LinfPoint x = fixtures::random_point(rng, dim, -9, 9), y = fixtures::random_point(rng, dim, -9, 9);
    const LinfPoint rx = box_retraction(a, x), ry = box_retraction(a, y);
    const Scalar dxa = dist_to_polyhedron(x, box_polyhedron(a), LpMethod::simplex).distance;
    const Scalar dya = dist_to_polyhedron(y, box_polyhedron(a), LpMethod::simplex).distance;
    const std::string tag = "triple " + std::to_string(t);
    if (!a.contains(rx)) f.add(tag + " image outside A");
    if (linf_dist(rx, ry) > linf_dist(x, y)) f.add(tag + " not 1-Lipschitz");
    if (linf_dist(x, rx) != dxa) f.add(tag + " not nearest");
    if (linf_dist(rx, y) > max(linf_dist(x, y), dya)) f.add(tag + " max inequality");
  }
  return f.outcome(std::to_string(kRetractionTriples) + " triples, dims 1..4");
}

// ---------------------------------------------------------------------------
// 9. Convexity consistency.

HPolyhedron random_polyhedron(Rng& rng, std::size_t dim) {
  const LinfPoint inside = fixtures::random_point(rng, dim, -3, 3);
  HPolyhedron p{dim, {}};
  const std::size_t rows = 1 + rng.below(5);
  for (std::size_t r = 0; r < rows; ++r) {
    LinearRow row{std::vector<Scalar>(dim), Scalar(0)};
    for (auto& c : row.a) c = Scalar(rng.between(-3, 3));
    for (std::size_t k = 0; k < dim; ++k) row.b += row.a[k] * inside[k];
    row.b += fixtures::random_dyadic(rng, 0, 2);
    p.rows.push_back(std::move(row));
  }
  return p;
}

Region two_boxes() {
  return Region(2, {box_polyhedron(Box{{q(0), q(0)}, {q(1), q(1)}}), box_polyhedron(Box{{q(3), q(0)}, {q(4), q(1)}})});
}

Outcome criterion_convexity() {
  Failures f;
  Rng rng(909);
  for (std::size_t t = 0; t < kConvexSegments; ++t) {
    const std::size_t dim = 1 + rng.below(3);
    const HPolyhedron a = random_polyhedron(rng, dim);
    const LinfPoint x = fixtures::random_point(rng, dim, -8, 8), y = fixtures::random_point(rng, dim, -8, 8);
    if (!distance_convexity_check(a, x, y, default_t_grid()).holds()) f.add("segment " + std::to_string(t));
  }
  for (std::size_t t = 0; t < kBoxSubsets; ++t) {
    const Region box = box_polyhedron(fixtures::random_box(rng, 1 + rng.below(3), -4, 4));
    for (std::size_t level = 2; level <= 6; ++level) {
      const PropertyReport r = refute_search(box, RefuteConfig{level, kBoxBudget, derive_seed(t, level)});
      if (r.verdict != Verdict::inconclusive) f.add("box " + std::to_string(t) + " level " + std::to_string(level));
    }
  }
  const PropertyReport two = refute_search(two_boxes(), RefuteConfig{2, kTwoBoxBudget, 1});
  if (!two.refuted() || two.checked > kTwoBoxBudget || !verify_refutation(two_boxes(), two.certificate)) {
    f.add("two-box fixture not refuted within budget");
  }
  return f.outcome("200 segments convex; 100 boxes inconclusive at levels 2..6; two boxes refuted after " +
                   std::to_string(two.checked) + " samples");
}

// ---------------------------------------------------------------------------
// 10. Ladder consistency.

Outcome criterion_ladder() {
  Failures f;
  struct Fixture {
    std::string name;
    Region region;
    RefuteVariant variant;
  };
  std::vector<Fixture> suite;
  Rng rng(1010);
  for (int i = 0; i < 4; ++i) {
    suite.push_back({"box " + std::to_string(i), box_polyhedron(fixtures::random_box(rng, 2 + i % 2, -4, 4)),
                     RefuteVariant::external});
  }
  suite.push_back({"half-plane x1+x2<=-1", halfspace({q(1), q(1)}, q(-1)), RefuteVariant::weakly_external});
  for (std::size_t n = 2; n <= 3; ++n) {
    const HellyInstance h = helly_counterexample(n);
    suite.push_back({"helly n=" + std::to_string(n) + " first set", h.sets.front(), RefuteVariant::weakly_external});
  }
  suite.push_back({"two boxes", two_boxes(), RefuteVariant::external});
  suite.push_back({"L-shape",
                   Region(2, {box_polyhedron(Box{{q(0), q(0)}, {q(2), q(1, 4)}}),
                              box_polyhedron(Box{{q(0), q(0)}, {q(1, 4), q(2)}})}),
                   RefuteVariant::plain});
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const PropertyReport r = four_to_n_consistency(suite[i].region, kLadderMax, kLadderBudget, 100 + i, suite[i].variant);
    if (r.certificate.value("status", "") == "THEOREM-INCONSISTENT") f.add(suite[i].name);
  }
  return f.outcome(std::to_string(suite.size()) + " fixtures, levels 2.." + std::to_string(kLadderMax) +
                   ", no inconsistency");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"helly counterexample", criterion_helly},
      {"median equals Gromov-ball intersection", criterion_median},
      {"modularity fixtures", criterion_modularity},
      {"barycenter properties", criterion_barycenter},
      {"(n,k) threshold", criterion_threshold},
      {"ip-lift contraction", criterion_ip_lift},
      {"refinement schemes", criterion_refinement},
      {"retraction inequality", criterion_retraction},
      {"convexity consistency", criterion_convexity},
      {"ladder consistency", criterion_ladder},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " (" << timing
              << ") " << o.detail << std::endl;
  }
  return failed;
}
