#include "hyperball/refine.hpp"

#include <memory>
#include <string>

#include "hyperball/error.hpp"
#include "hyperball/lab.hpp"
#include "hyperball/rng.hpp"

namespace hyperball {

namespace {

HPolyhedron meet(const HPolyhedron& a, const HPolyhedron& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimMismatch, "sets of different dimensions");
  HPolyhedron out = a;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  return out;
}

Scalar halving(const Scalar& s, std::size_t k) { return s * pow2(-static_cast<long>(k)); }

// delta (1 - 2^-n)
Scalar partial_sum(const Scalar& delta, std::size_t n) { return delta - halving(delta, n); }

void record_step(RefinementTrace& t) {
  const auto& it = t.iterates;
  if (it.size() >= 2) t.step_distances.push_back(linf_dist(it[it.size() - 2], it.back()));
}

}  // namespace

EpsOracle exact_oracle(const HPolyhedron& set, std::size_t level) {
  EpsOracle o;
  o.level = level;
  o.set = set;
  o.query = [set](const std::vector<Ball>& family, const Scalar&) -> std::optional<LinfPoint> {
    auto r = lp_feasible(set, family);
    if (!r) return std::nullopt;
    return r.witness;
  };
  return o;
}

EpsOracle slack_oracle(const HPolyhedron& set, std::size_t level, std::uint64_t seed) {
  EpsOracle o;
  o.level = level;
  o.set = set;
  auto rng = std::make_shared<Rng>(seed);
  o.query = [set, rng](const std::vector<Ball>& family, const Scalar& eps) -> std::optional<LinfPoint> {
    LinearSystem sys = set.system();
    for (const auto& b : family) {
      for (std::size_t k = 0; k < set.dim; ++k) {
        LinearRow up{std::vector<Scalar>(set.dim, Scalar(0)), b.center[k] + b.radius + eps};
        up.a[k] = 1;
        LinearRow down{std::vector<Scalar>(set.dim, Scalar(0)), -(b.center[k] - b.radius - eps)};
        down.a[k] = -1;
        sys.rows.push_back(std::move(up));
        sys.rows.push_back(std::move(down));
      }
    }
    std::vector<Scalar> objective(set.dim);
    for (auto& c : objective) c = Scalar(static_cast<long>(rng->between(-3, 3)));
    try {
      auto m = minimize(sys, objective);
      if (!m) return std::nullopt;
      return m->point;
    } catch (const Error&) {
      auto p = find_feasible_point(sys);
      if (!p) return std::nullopt;
      return *p;
    }
  };
  return o;
}

LinfPoint call_oracle(const EpsOracle& oracle, const std::vector<Ball>& family, const Scalar& eps,
                      std::size_t step) {
  if (family.size() > oracle.level) {
    throw Error(ErrorCode::ParamOutOfRange,
                "family of " + std::to_string(family.size()) + " balls exceeds oracle level " +
                    std::to_string(oracle.level),
                {step});
  }
  if (eps <= 0) throw Error(ErrorCode::ParamOutOfRange, "oracle slack must be positive", {step});
  auto answer = oracle.query(family, eps);
  if (!answer) throw Error(ErrorCode::OracleFailure, "oracle returned no point at step " + std::to_string(step), {step});
  const LinfPoint& p = *answer;
  if (p.size() != oracle.set.dim || !oracle.set.contains(p)) {
    throw Error(ErrorCode::OracleFailure, "oracle point outside its set at step " + std::to_string(step), {step});
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (linf_dist(p, family[i].center) > family[i].radius + eps) {
      throw Error(ErrorCode::OracleFailure,
                  "oracle point misses inflated ball " + std::to_string(i) + " at step " + std::to_string(step),
                  {step, i});
    }
  }
  return p;
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::cauchy_halving: return "cauchy-halving";
    case Scheme::chain_walk: return "chain-walk";
    case Scheme::triple_34: return "triple-34";
    case Scheme::ip_lift: return "ip-lift";
  }
  return "cauchy-halving";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  for (auto s : {Scheme::cauchy_halving, Scheme::chain_walk, Scheme::triple_34, Scheme::ip_lift}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

ContractionReport verify_trace(const RefinementTrace& trace, Scheme scheme) {
  ContractionReport rep;
  rep.scheme = scheme;
  const auto& it = trace.iterates;
  if (trace.scheme != scheme) {
    rep.passed = false;
    rep.warnings.push_back("trace was produced by " + std::string(to_string(trace.scheme)));
    return rep;
  }
  if (it.empty()) {
    rep.warnings.push_back("empty trace");
    return rep;
  }
  if (trace.step_distances.size() + 1 != it.size()) {
    rep.passed = false;
    rep.warnings.push_back("step distance count does not match the iterates");
  }
  const TraceParams& p = trace.params;
  const Scalar three_quarters(3, 4);
  for (std::size_t k = 0; k + 1 < it.size(); ++k) {
    const Scalar observed = linf_dist(it[k], it[k + 1]);
    bool ok = k < trace.step_distances.size() && trace.step_distances[k] == observed;
    Scalar bound;
    switch (scheme) {
      case Scheme::cauchy_halving:
        bound = halving(p.scale, k) + halving(p.scale, k + 1);
        // Tail from here to the end of the trace.
        ok = ok && linf_dist(it[k], it.back()) <= 3 * halving(p.scale, k);
        break;
      case Scheme::chain_walk: {
        const std::size_t n = k + 1;
        bound = p.eps_tilde + partial_sum(p.delta, n);
        const Scalar outer = (n <= p.n0 ? p.gap_d - Scalar(static_cast<unsigned long>(n)) * p.eps_tilde : p.r) +
                             partial_sum(p.delta, n);
        ok = ok && linf_dist(p.x, it[n]) <= outer;
        break;
      }
      case Scheme::triple_34: {
        const Scalar decay = pow(three_quarters, k);
        bound = decay * p.r0 / 2;
        if (trace.reference) {
          ok = ok && dist_to_polyhedron(it[k], *trace.reference).distance <= decay * p.r0;
        }
        break;
      }
      case Scheme::ip_lift:
        bound = pow(p.rate, k) * p.radius + 3 * p.tau;
        break;
    }
    ok = ok && observed <= bound;
    rep.observed.push_back(observed);
    rep.bounds.push_back(bound);
    rep.step_pass.push_back(ok);
    rep.passed = rep.passed && ok;
  }
  // Slack constraints of each iterate against the target family.
  if (!trace.family.empty() && trace.slacks.size() == it.size()) {
    for (std::size_t k = 0; k < it.size(); ++k) {
      for (const auto& b : trace.family) {
        if (linf_dist(it[k], b.center) > b.radius + trace.slacks[k]) {
          rep.passed = false;
          if (k < rep.step_pass.size()) rep.step_pass[k] = false;
          rep.warnings.push_back("iterate " + std::to_string(k) + " misses an inflated ball");
          break;
        }
      }
    }
  }
  if (scheme == Scheme::triple_34 && trace.reference) {
    const Scalar bound = pow(three_quarters, it.size() - 1) * p.r0;
    if (dist_to_polyhedron(it.back(), *trace.reference).distance > bound) {
      rep.passed = false;
      rep.warnings.push_back("final iterate too far from the reference set");
    }
  }
  return rep;
}

AlmostToExactResult almost_to_exact(const EpsOracle& oracle, const std::vector<Ball>& family, std::size_t rounds,
                                    const Scalar& scale) {
  if (scale <= 0) throw Error(ErrorCode::ParamOutOfRange, "scale must be positive");
  if (family.size() + 1 > oracle.level) {
    throw Error(ErrorCode::ParamOutOfRange, "oracle level must cover the family plus one ball");
  }
  if (!check_admissible(LinfFamily{family, Region(oracle.set)})) {
    throw Error(ErrorCode::NotAdmissible, "family is not admissible for the oracle's set");
  }
  AlmostToExactResult out;
  RefinementTrace& t = out.trace;
  t.scheme = Scheme::cauchy_halving;
  t.family = family;
  t.params.scale = scale;

  t.slacks.push_back(scale / 2);
  t.iterates.push_back(call_oracle(oracle, family, t.slacks.back(), 0));
  for (std::size_t k = 0; k < rounds; ++k) {
    std::vector<Ball> f = family;
    f.push_back({t.iterates.back(), halving(scale, k)});
    t.slacks.push_back(halving(scale, k + 1));
    t.iterates.push_back(call_oracle(oracle, f, t.slacks.back(), k + 1));
    record_step(t);
  }
  out.point = t.iterates.back();
  return out;
}

namespace {

struct StepOne {
  LinfPoint a, a_prime;
  Scalar s, eps_tilde, delta;
  std::size_t n0 = 0;
  bool negative = false;
  RefinementTrace trace;
};

// One walk from y towards x, alternating between the two sets.
StepOne step_one(const EpsOracle& oa, const EpsOracle& ob, const LinfPoint& x, const Scalar& r, const LinfPoint& y,
                 const Scalar& eps, const Scalar& delta_cap, std::size_t& calls) {
  StepOne out;
  const Scalar d = linf_dist(x, y);
  out.s = d - r;
  out.trace.scheme = Scheme::chain_walk;
  out.trace.iterates.push_back(y);
  if (out.s < 0) {
    out.negative = true;
    out.a = y;
    out.a_prime = y;
    return out;
  }
  Scalar et = eps / 2;
  Scalar ratio = out.s / et;
  std::size_t n0 = mpz_class(ratio.get_num() / ratio.get_den()).get_ui();
  if (n0 % 2 == 1) {
    // The walk must end in A'; one more, shorter step keeps the parity even.
    ++n0;
    et = out.s / Scalar(static_cast<unsigned long>(n0));
  }
  const Scalar dl = min(delta_cap, et / Scalar(static_cast<unsigned long>(n0 + 1)));
  out.eps_tilde = et;
  out.delta = dl;
  out.n0 = n0;
  TraceParams& p = out.trace.params;
  p.x = x;
  p.gap_d = d;
  p.eps_tilde = et;
  p.delta = dl;
  p.n0 = n0;
  p.r = r;

  LinfPoint prev = y;
  for (std::size_t n = 1; n <= n0 + 2; ++n) {
    const EpsOracle& target = (n % 2 == 1) ? oa : ob;
    const Scalar carried = partial_sum(dl, n - 1);
    const Scalar outer = (n <= n0 ? d - Scalar(static_cast<unsigned long>(n)) * et : r) + carried;
    std::vector<Ball> family{{prev, et + carried}, {x, outer}};
    prev = call_oracle(target, family, halving(dl, n), n);
    ++calls;
    out.trace.iterates.push_back(prev);
    record_step(out.trace);
  }
  const auto& it = out.trace.iterates;
  out.a = it[it.size() - 2];
  out.a_prime = it.back();
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::OracleFailure, "chain walk postcondition failed: " + what);
}

}  // namespace

ChainWalkResult chain_walk(const EpsOracle& oracle_a, const EpsOracle& oracle_a_prime, const LinfPoint& x,
                           const Scalar& r, const LinfPoint& y, const Scalar& eps, const Scalar& delta,
                           const ChainWalkConfig& config) {
  if (eps <= 0 || delta <= 0) throw Error(ErrorCode::ParamOutOfRange, "eps and delta must be positive");
  if (r < 0) throw Error(ErrorCode::ParamOutOfRange, "negative radius");
  if (!oracle_a.set.contains(y) || !oracle_a_prime.set.contains(y)) {
    throw Error(ErrorCode::PointNotInSet, "y must lie in both sets");
  }
  if (dist_to_polyhedron(x, oracle_a.set).distance > r || dist_to_polyhedron(x, oracle_a_prime.set).distance > r) {
    throw Error(ErrorCode::ParamOutOfRange, "x is farther than r from one of the sets");
  }
  ChainWalkResult out;
  const std::size_t rounds = config.refine_rounds;
  // Without refinement a single walk with (eps, delta); otherwise the first
  // walk uses (eps/2, delta/2) and each later round halves again.
  StepOne first = step_one(oracle_a, oracle_a_prime, x, r, y, rounds == 0 ? eps : eps / 2,
                           rounds == 0 ? delta : delta / 2, out.oracle_calls);
  out.s = first.s;
  out.eps_tilde = first.eps_tilde;
  out.delta = first.delta;
  out.n0 = first.n0;
  out.trace = first.trace;
  if (first.negative) {
    out.status = ChainStatus::negative_gap;
    out.a = y;
    out.a_prime = y;
    return out;
  }
  LinfPoint a = first.a, ap = first.a_prime;
  out.rounds.push_back({a, ap});
  const Scalar s = first.s;
  for (std::size_t n = 2; n <= rounds + 1; ++n) {
    const Scalar rn = halving(eps, n) + halving(delta, n + 2);
    const Scalar outer = r + partial_sum(delta, n - 1) - halving(eps, n) + halving(delta, n + 2);
    if (outer < 0) throw Error(ErrorCode::ParamOutOfRange, "eps too large relative to r for refinement rounds", {n});
    auto centre = ball_family_intersection({{a, rn}, {ap, rn}, {x, outer}});
    require(centre.feasible, "ambient centre for round " + std::to_string(n));
    StepOne next = step_one(oracle_a, oracle_a_prime, centre.witness, rn, y, halving(eps, n),
                            halving(delta, n + 1), out.oracle_calls);
    const Scalar step_bound = (2 * eps + delta) * pow2(-static_cast<long>(n));
    require(linf_dist(next.a, next.a_prime) <= halving(eps, n), "d(a_n, a'_n)");
    require(linf_dist(a, next.a) <= step_bound && linf_dist(ap, next.a_prime) <= step_bound, "round step");
    require(linf_dist(x, next.a) <= r + partial_sum(delta, n) && linf_dist(x, next.a_prime) <= r + partial_sum(delta, n),
            "distance to x");
    require(linf_dist(y, next.a) <= s + partial_sum(eps, n), "distance to y");
    a = next.a;
    ap = next.a_prime;
    out.rounds.push_back({a, ap});
  }
  require(linf_dist(a, ap) <= eps, "d(a, a') <= eps");
  require(linf_dist(y, a) <= s + eps, "d(y, a) <= s + eps");
  require(linf_dist(x, a) <= r + delta && linf_dist(x, ap) <= r + delta, "both within r + delta of x");
  out.a = a;
  out.a_prime = ap;
  return out;
}

TripleResult triple_intersection(const EpsOracle& a0, const EpsOracle& a1, const EpsOracle& a2, const LinfPoint& x0,
                                 std::size_t rounds) {
  if (a0.level < 3 || a1.level < 2 || a2.level < 2) {
    throw Error(ErrorCode::ParamOutOfRange, "oracle levels must be at least 3, 2, 2");
  }
  if (!a1.set.contains(x0) || !a2.set.contains(x0)) throw Error(ErrorCode::PointNotInSet, "x0 must lie in A1 and A2");
  const HPolyhedron a01 = meet(a0.set, a1.set), a02 = meet(a0.set, a2.set), a12 = meet(a1.set, a2.set);
  if (!lp_feasible(a01)) throw Error(ErrorCode::PairwiseIntersectionUnverified, "A0 and A1 do not meet", {0, 1});
  if (!lp_feasible(a02)) throw Error(ErrorCode::PairwiseIntersectionUnverified, "A0 and A2 do not meet", {0, 2});
  if (!lp_feasible(a12)) throw Error(ErrorCode::PairwiseIntersectionUnverified, "A1 and A2 do not meet", {1, 2});

  TripleResult out;
  RefinementTrace& t = out.trace;
  t.scheme = Scheme::triple_34;
  t.reference = a0.set;
  out.r0 = dist_to_polyhedron(x0, a0.set).distance;
  t.params.r0 = out.r0;
  t.iterates.push_back(x0);

  auto solve = [](const HPolyhedron& p, const std::vector<Ball>& balls, const char* what, std::size_t n) {
    auto r = lp_feasible(p, balls);
    if (!r) throw Error(ErrorCode::NoConvergence, std::string(what) + " is empty at round " + std::to_string(n), {n});
    return r.witness;
  };
  for (std::size_t n = 0; n < rounds; ++n) {
    const LinfPoint x = t.iterates.back();
    const Scalar r = dist_to_polyhedron(x, a0.set).distance;
    if (r == 0) {
      t.iterates.push_back(x);
      record_step(t);
      continue;
    }
    const LinfPoint y0 = solve(a01, {{x, r * Scalar(13, 12)}}, "A0 cap A1 near x", n);
    const LinfPoint z0 = solve(a02, {{x, r * Scalar(7, 6)}, {y0, r * Scalar(7, 6)}}, "A0 cap A2 near x and y0", n);
    const LinfPoint bar = call_oracle(a0, {{x, r}, {y0, r * Scalar(7, 12)}, {z0, r * Scalar(7, 12)}}, r / 12, n);
    const LinfPoint next = solve(a12, {{bar, r * Scalar(3, 4)}, {x, r / 2}}, "A1 cap A2 near the A0 point", n);
    t.iterates.push_back(next);
    record_step(t);
  }
  out.point = t.iterates.back();
  out.report = verify_trace(t, Scheme::triple_34);
  return out;
}

Json to_json(const RefinementTrace& trace) {
  Json out = {{"scheme", std::string(to_string(trace.scheme))},
              {"iterates", trace.iterates},
              {"step_distances", trace.step_distances}};
  if (!trace.slacks.empty()) out["slacks"] = trace.slacks;
  if (!trace.family.empty()) {
    Json fam = Json::array();
    for (const auto& b : trace.family) fam.push_back(to_json(b));
    out["family"] = fam;
  }
  const TraceParams& p = trace.params;
  switch (trace.scheme) {
    case Scheme::cauchy_halving: out["scale"] = p.scale; break;
    case Scheme::chain_walk:
      out["params"] = {{"x", p.x}, {"d", p.gap_d}, {"r", p.r}, {"eps_tilde", p.eps_tilde}, {"delta", p.delta},
                       {"n0", p.n0}};
      break;
    case Scheme::triple_34: out["r0"] = p.r0; break;
    case Scheme::ip_lift: out["params"] = {{"rate", p.rate}, {"R", p.radius}, {"tau", p.tau}}; break;
  }
  return out;
}

Json to_json(const ContractionReport& report) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < report.observed.size(); ++k) {
    steps.push_back({{"observed", report.observed[k]}, {"bound", report.bounds[k]}, {"pass", bool(report.step_pass[k])}});
  }
  Json out = {{"scheme", std::string(to_string(report.scheme))}, {"passed", report.passed}, {"steps", steps}};
  if (!report.warnings.empty()) out["warnings"] = report.warnings;
  return out;
}

}  // namespace hyperball
