#include "hyperball/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>

#include "hyperball/bicombing.hpp"
#include "hyperball/error.hpp"
#include "hyperball/io.hpp"
#include "hyperball/ip.hpp"
#include "hyperball/lab.hpp"
#include "hyperball/refine.hpp"
#include "hyperball/rng.hpp"

namespace hyperball {

namespace {

struct Outcome {
  Json result = Json::object();
  int code = kExitHolds;
  std::string text;  // human-readable summary
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::holds: return kExitHolds;
    case Verdict::refuted: return kExitRefuted;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string verdict_line(const PropertyReport& rep) {
  return rep.check + ": " + std::string(to_string(rep.verdict)) + "\n";
}

Outcome from_report(const PropertyReport& rep) {
  return {to_json(rep), exit_for(rep.verdict), verdict_line(rep)};
}

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::UsageError, what); }

Json point_json(const LinfPoint& p) { return Json(p); }

std::string point_text(const LinfPoint& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + format_scalar(p[k]);
  return s + ")";
}

// ---------------------------------------------------------------------------

Outcome check_family(const FamilyDoc& doc) {
  PropertyReport rep;
  rep.check = "family_witness";
  rep.exhaustive = true;
  rep.checked = 1;
  const Admissibility adm = check_admissible(doc.family);
  if (!adm) {
    rep.verdict = Verdict::refuted;
    const bool pairwise = adm.violation == Admissibility::Violation::pairwise;
    rep.certificate = {{"admissible", false}, {"violation", pairwise ? "pairwise" : "external"}, {"i", adm.i}};
    if (pairwise) rep.certificate["j"] = adm.j;
    return from_report(rep);
  }
  const FeasibilityResult w =
      doc.family.subset ? external_witness(*doc.family.subset, doc.family.balls) : hyperconvex_witness(doc.family);
  rep.verdict = w ? Verdict::holds : Verdict::refuted;
  rep.certificate = {{"admissible", true}, {"witness", w ? Json(w.witness) : Json(nullptr)}};
  Outcome o = from_report(rep);
  if (w) o.text += "witness " + point_text(w.witness) + "\n";
  return o;
}

Outcome check_region(const Region& region, const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<LinfPoint> inside;
  const std::uint64_t draws = std::max<std::uint64_t>(cfg.budget, 1);
  for (std::uint64_t i = 0; i < draws && inside.size() < 32; ++i) {
    LinfPoint p(region.dim);
    for (auto& c : p) c = Scalar(rng.between(-32, 32), 4);
    if (region.contains(p)) inside.push_back(std::move(p));
  }
  std::vector<std::pair<LinfPoint, LinfPoint>> pairs;
  for (std::size_t i = 0; i + 1 < inside.size(); i += 2) pairs.emplace_back(inside[i], inside[i + 1]);
  PropertyReport rep = sigma_convexity_check(region, pairs, default_t_grid());
  rep.seed = cfg.seed;
  if (pairs.empty()) {
    rep.verdict = Verdict::inconclusive;
    rep.warnings.push_back("no sample points inside the region within [-8, 8]");
  }
  return from_report(rep);
}

Outcome cmd_check(const Instance& inst, const RunConfig& cfg) {
  if (auto* m = std::get_if<MetricDoc>(&inst)) return from_report(is_modular(m->space));
  if (auto* g = std::get_if<GraphDoc>(&inst)) return from_report(is_modular(g->space));
  if (auto* f = std::get_if<FamilyDoc>(&inst)) return check_family(*f);
  if (auto* h = std::get_if<HellyInstance>(&inst)) return from_report(verify_helly_instance(*h));
  if (auto* r = std::get_if<RegionDoc>(&inst)) return check_region(r->region, cfg);
  usage("check does not accept " + std::string(instance_kind(inst)) + " instances");
}

Region region_of(const Instance& inst, const char* cmd) {
  if (auto* r = std::get_if<RegionDoc>(&inst)) return r->region;
  if (auto* f = std::get_if<FamilyDoc>(&inst); f && f->family.subset) return *f->family.subset;
  usage(std::string(cmd) + " needs a region instance");
}

Outcome cmd_refute(const Instance& inst, const RunConfig& cfg, std::size_t level, const std::string& variant_name,
                   std::optional<std::size_t> up_to) {
  std::string name = variant_name;
  std::replace(name.begin(), name.end(), '-', '_');
  const auto variant = refute_variant_from_string(name);
  if (!variant) usage("unknown variant '" + variant_name + "'");
  const Region region = region_of(inst, "refute");
  if (up_to) return from_report(four_to_n_consistency(region, *up_to, cfg.budget, cfg.seed, *variant, cfg.threads));
  RefuteConfig rc;
  rc.level = level;
  rc.budget = cfg.budget;
  rc.seed = cfg.seed;
  rc.variant = *variant;
  rc.threads = cfg.threads;
  Outcome o = from_report(refute_search(region, rc));
  if (o.code == kExitRefuted) o.text += "refuting family:\n" + o.result["certificate"].dump(2) + "\n";
  return o;
}

Outcome cmd_helly(const RunConfig& cfg, std::optional<std::size_t> dim, const std::optional<Instance>& inst,
                  std::optional<std::size_t> k, bool verify) {
  if (inst) {
    const auto* h = std::get_if<HellyInstance>(&*inst);
    if (!h) usage("helly --instance needs a helly instance");
    const PropertyReport order = helly_order_check(h->sets, k ? *k : h->n);
    const PropertyReport witnesses = verify_helly_instance(*h);
    Outcome o{{{"order", to_json(order)}, {"instance", to_json(witnesses)}}, exit_for(order.verdict),
              verdict_line(witnesses) + verdict_line(order)};
    return o;
  }
  if (!dim) usage("helly needs --dim or --instance");
  const HellyInstance h = helly_counterexample(*dim);
  const std::string serialized = serialize_instance(h);
  if (!cfg.output.empty()) write_file(cfg.output, serialized);
  const PropertyReport witnesses = verify_helly_instance(h);
  Outcome o;
  o.result["instance_check"] = to_json(witnesses);
  if (cfg.output.empty()) o.result["instance"] = to_json(h);
  if (!verify) {
    o.code = exit_for(witnesses.verdict);
    o.text = cfg.output.empty() ? serialized : verdict_line(witnesses) + "wrote " + cfg.output + "\n";
    return o;
  }
  const PropertyReport order = helly_order_check(h.sets, k ? *k : *dim);
  o.result["order"] = to_json(order);
  o.code = exit_for(order.verdict);
  o.text = verdict_line(witnesses) + verdict_line(order);
  return o;
}

Outcome from_trace(const RefinementTrace& trace, const LinfPoint& point, Json extra) {
  const ContractionReport rep = verify_trace(trace, trace.scheme);
  Outcome o;
  o.result = std::move(extra);
  o.result["point"] = point_json(point);
  o.result["trace"] = to_json(trace);
  o.result["report"] = to_json(rep);
  o.code = rep.passed ? kExitHolds : kExitRefuted;
  o.text = std::string(to_string(trace.scheme)) + ": " + (rep.passed ? "bounds hold" : "bound violated") + " over " +
           std::to_string(trace.iterates.size()) + " iterates\npoint " + point_text(point) + "\n";
  return o;
}

Outcome cmd_refine(const Instance& inst, const RunConfig& cfg, std::optional<std::size_t> rounds) {
  const auto* doc = std::get_if<RefineDoc>(&inst);
  if (!doc) usage("refine needs a refine instance");
  const std::size_t k = rounds ? *rounds : doc->rounds;
  switch (doc->scheme) {
    case Scheme::cauchy_halving: {
      const std::size_t level = doc->level ? *doc->level : doc->family.size() + 1;
      const EpsOracle oracle = slack_oracle(doc->sets[0], level, cfg.seed);
      const AlmostToExactResult res = almost_to_exact(oracle, doc->family, k, doc->scale);
      return from_trace(res.trace, res.point, {{"scheme", "cauchy-halving"}});
    }
    case Scheme::chain_walk: {
      const EpsOracle a = slack_oracle(doc->sets[0], 2, derive_seed(cfg.seed, 0));
      const EpsOracle b = slack_oracle(doc->sets[1], 2, derive_seed(cfg.seed, 1));
      const ChainWalkResult res =
          chain_walk(a, b, doc->x, doc->r, doc->y, doc->eps, doc->delta, ChainWalkConfig{doc->refine_rounds});
      Json extra{{"scheme", "chain-walk"},
                 {"status", res.status == ChainStatus::ok ? "ok" : "negative_gap"},
                 {"a", res.a},
                 {"a_prime", res.a_prime},
                 {"eps_tilde", res.eps_tilde},
                 {"delta_used", res.delta},
                 {"n0", res.n0},
                 {"oracle_calls", res.oracle_calls}};
      return from_trace(res.trace, res.a, std::move(extra));
    }
    default: {
      const EpsOracle a0 = slack_oracle(doc->sets[0], 3, derive_seed(cfg.seed, 0));
      const EpsOracle a1 = slack_oracle(doc->sets[1], 2, derive_seed(cfg.seed, 1));
      const EpsOracle a2 = slack_oracle(doc->sets[2], 2, derive_seed(cfg.seed, 2));
      const TripleResult res = triple_intersection(a0, a1, a2, doc->start, k);
      return from_trace(res.trace, res.point, {{"scheme", "triple-34"}, {"r0", res.r0}});
    }
  }
}

BarycenterConfig::Method method_from(const std::string& name) {
  if (name == "iterate") return BarycenterConfig::Method::iterate;
  if (name == "closed-form" || name == "closed_form") return BarycenterConfig::Method::closed_form;
  usage("unknown barycenter method '" + name + "'");
}

BackendKind backend_from(const std::string& name) {
  if (name == "dyadic") return BackendKind::dyadic;
  if (name == "exact") return BackendKind::exact;
  usage("unknown backend '" + name + "'");
}

Outcome cmd_barycenter(const Instance& inst, const RunConfig& cfg, const std::string& method,
                       std::size_t max_rounds) {
  const auto* doc = std::get_if<PointsDoc>(&inst);
  if (!doc) usage("barycenter needs a points instance");
  BarycenterConfig bc{cfg.tau, max_rounds, method_from(method)};
  BarycenterStats stats;
  const LinfPoint bar = barycenter_linf(backend_from(cfg.backend), doc->points, bc, &stats);
  const LinfPoint mean = LinfBicombing{}.mean(doc->points);
  Outcome o;
  o.result = {{"point", bar},
              {"rounds", stats.rounds},
              {"monotone", stats.monotone},
              {"distance_to_mean", linf_dist(bar, mean)},
              {"m", doc->points.size()}};
  o.text = "barycenter " + point_text(bar) + "\n";
  return o;
}

Outcome cmd_ip_threshold(std::size_t k) {
  const std::size_t n = ip_threshold(k);
  Outcome o;
  o.result = {{"k", k}, {"threshold", n}, {"at_threshold", to_json(ip_constants(n, k, 0))}};
  if (n > k) o.result["below_threshold"] = to_json(ip_constants(n - 1, k, 0));
  o.result["note"] = "N' counted by enumeration; equals (n-k+2)(n-k+1)/2";
  o.text = std::to_string(n) + "\n";
  return o;
}

// Picks a random corner of the box intersection; a non-trivial exact provider.
IntersectionOracle corner_oracle(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const std::vector<Ball>& balls, const LinfPoint&) -> std::optional<LinfPoint> {
    LinfPoint p(balls.front().dim());
    for (std::size_t k = 0; k < p.size(); ++k) {
      Scalar lo, hi;
      for (std::size_t i = 0; i < balls.size(); ++i) {
        const Scalar a = balls[i].center[k] - balls[i].radius, b = balls[i].center[k] + balls[i].radius;
        if (i == 0 || a > lo) lo = a;
        if (i == 0 || b < hi) hi = b;
      }
      if (lo > hi) return std::nullopt;
      p[k] = rng->coin() ? lo : hi;
    }
    return p;
  };
}

Outcome cmd_ip_lift(const Instance& inst, const RunConfig& cfg, std::optional<std::size_t> k,
                    std::optional<std::size_t> rounds, const std::string& eps, const std::string& method,
                    const std::string& oracle_name) {
  const auto* doc = std::get_if<FamilyDoc>(&inst);
  if (!doc) usage("ip-lift needs a family instance");
  IpLiftConfig lc;
  if (rounds) lc.rounds = *rounds;
  lc.barycenter.tau = cfg.tau;
  lc.barycenter.method = method_from(method);
  if (!eps.empty()) lc.eps = parse_scalar(eps);
  IntersectionOracle oracle;
  if (oracle_name == "clamp") {
    oracle = clamp_intersection_oracle();
  } else if (oracle_name == "corner") {
    oracle = corner_oracle(cfg.seed);
  } else {
    usage("unknown oracle '" + oracle_name + "'");
  }
  const std::size_t kk = k ? *k : doc->k ? *doc->k : 2;
  const IpLiftResult res = ip_lift(doc->family.balls, kk, lc, oracle);
  Outcome o;
  o.result = {{"point", res.point},
              {"params", to_json(res.params)},
              {"radius", res.radius},
              {"round_radii", res.round_radii},
              {"lift_gaps", res.lift_gaps},
              {"final_violation", res.final_violation},
              {"final_violation_approx", to_double(res.final_violation)},
              {"trace", to_json(res.trace)},
              {"report", to_json(res.report)},
              {"oracle", oracle_name}};
  const bool ok = res.report.passed && res.warnings.empty();
  o.code = ok ? kExitHolds : kExitRefuted;
  std::ostringstream text;
  text << "ip-lift: c = " << format_scalar(res.params.c) << ", R = " << format_scalar(res.radius) << ", "
       << (ok ? "bounds hold" : "bound violated") << "\npoint " << point_text(res.point) << "\nfinal violation "
       << to_double(res.final_violation) << "\n";
  o.text = text.str();
  return o;
}

Outcome cmd_graph_scan(const Instance& inst, std::size_t n) {
  const FiniteMetricSpace* space = nullptr;
  const GraphInstance* graph = nullptr;
  if (auto* g = std::get_if<GraphDoc>(&inst)) {
    space = &g->space;
    graph = &g->graph;
  } else if (auto* m = std::get_if<MetricDoc>(&inst)) {
    space = &m->space;
  } else {
    usage("graph-scan needs a graph or matrix instance");
  }
  const PropertyReport modular = is_modular(*space);
  Outcome o;
  o.result["modular"] = to_json(modular);
  o.text = verdict_line(modular);
  Verdict worst = modular.verdict;
  if (graph) {
    const PropertyReport helly = graph_n_helly_bruteforce(*graph, n);
    o.result["ball_helly"] = to_json(helly);
    o.text += verdict_line(helly);
    if (helly.verdict == Verdict::refuted) worst = Verdict::refuted;
  }
  o.code = exit_for(worst);
  return o;
}

unsigned threads_from_env() {
  const char* v = std::getenv("HYPERBALL_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const unsigned long n = std::strtoul(v, &end, 10);
  if (*end != '\0' || n == 0 || n > 256) usage("HYPERBALL_THREADS must be an integer in [1, 256]");
  return static_cast<unsigned>(n);
}

int code_for_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::OracleFailure:
      return kExitInconclusive;
    default:
      return kExitUsage;
  }
}

}  // namespace

Json to_json(const RunConfig& c) {
  return {{"seed", c.seed}, {"budget", c.budget},   {"tau", c.tau},
          {"backend", c.backend}, {"threads", c.threads}, {"output", c.output}};
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact hyperconvexity checks on l-infinity and finite metric spaces", "hyperball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string tau_text;
  app.add_flag("--json", cfg.json, "Emit the full JSON report");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--budget", cfg.budget, "Sample budget for randomised searches");
  app.add_option("--tau", tau_text, "Barycenter tolerance, a positive rational");
  app.add_option("--backend", cfg.backend, "Barycenter backend: dyadic or exact");
  app.add_option("--out", cfg.output, "Write the instance or report here");

  std::string instance_path;
  auto add_instance = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--instance", instance_path, "Instance file (JSON)");
    if (required) opt->required();
    sub->fallthrough();
  };

  auto* check = app.add_subcommand("check", "Check an instance: modularity, family witness, helly instance");
  add_instance(check, true);

  std::size_t level = 2;
  std::string variant = "external";
  std::optional<std::size_t> up_to;
  auto* refute = app.add_subcommand("refute", "Randomised search for a family refuting hyperconvexity");
  add_instance(refute, true);
  refute->add_option("--level", level, "Number of balls per family")->check(CLI::Range(2, 64));
  refute->add_option("--variant", variant, "plain, external or weakly-external");
  refute->add_option("--up-to", up_to, "Run levels 2..N and check consistency");

  std::optional<std::size_t> dim, k_opt;
  bool verify = false;
  auto* helly = app.add_subcommand("helly", "Emit or verify the half-space family that is not Helly of order n");
  add_instance(helly, false);
  helly->add_option("--dim", dim, "Dimension n")->check(CLI::Range(1, 12));
  helly->add_option("--k", k_opt, "Order to check (default n)");
  helly->add_flag("--verify", verify, "Run the exhaustive order check");

  std::optional<std::size_t> rounds;
  auto* refine = app.add_subcommand("refine", "Run a refinement scheme and check its contraction bounds");
  add_instance(refine, true);
  refine->add_option("--rounds", rounds, "Override the instance's round count");

  std::string points_path, method = "iterate";
  std::size_t max_rounds = 200;
  auto* bary = app.add_subcommand("barycenter", "Barycenter of a tuple of points");
  bary->add_option("--points", points_path, "Points file (JSON)")->required();
  bary->add_option("--method", method, "iterate or closed-form");
  bary->add_option("--max-rounds", max_rounds, "Round cap");
  bary->fallthrough();

  std::size_t k_threshold = 2;
  auto* thr = app.add_subcommand("ip-threshold", "Least n for which (n,k) intersection lifts");
  thr->add_option("--k", k_threshold, "k >= 2")->required();
  thr->fallthrough();

  std::string eps_text, lift_method = "closed-form", oracle = "clamp";
  auto* lift = app.add_subcommand("ip-lift", "Lift (n,k) intersection to a common point");
  add_instance(lift, true);
  lift->add_option("--k", k_opt, "k (default from the instance, else 2)");
  lift->add_option("--rounds", rounds, "Rounds (default 30)");
  lift->add_option("--eps", eps_text, "Outer slack epsilon (default: dyadic rule)");
  lift->add_option("--method", lift_method, "Barycenter method: closed-form or iterate");
  lift->add_option("--oracle", oracle, "Witness provider: clamp or corner (seeded)");

  std::size_t scan_n = 3;
  auto* scan = app.add_subcommand("graph-scan", "Modularity and brute-force ball Helly scan of a graph");
  add_instance(scan, true);
  scan->add_option("--n", scan_n, "Family size")->check(CLI::Range(2, 8));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  Json report{{"tool", "hyperball"}, {"version", std::string(kVersion)}, {"command", sub->get_name()}};
  try {
    if (!tau_text.empty()) cfg.tau = parse_scalar(tau_text);
    if (cfg.tau <= 0) usage("--tau must be positive");
    cfg.threads = threads_from_env();
    std::optional<Instance> inst;
    if (!instance_path.empty()) inst = parse_instance(instance_path);

    Outcome o;
    const std::string name = sub->get_name();
    if (name == "check") {
      o = cmd_check(*inst, cfg);
    } else if (name == "refute") {
      o = cmd_refute(*inst, cfg, level, variant, up_to);
    } else if (name == "helly") {
      o = cmd_helly(cfg, dim, inst, k_opt, verify);
    } else if (name == "refine") {
      o = cmd_refine(*inst, cfg, rounds);
    } else if (name == "barycenter") {
      o = cmd_barycenter(parse_instance(points_path), cfg, method, max_rounds);
    } else if (name == "ip-threshold") {
      o = cmd_ip_threshold(k_threshold);
    } else if (name == "ip-lift") {
      o = cmd_ip_lift(*inst, cfg, k_opt, rounds, eps_text, lift_method, oracle);
    } else {
      o = cmd_graph_scan(*inst, scan_n);
    }
    report["config"] = to_json(cfg);
    report["result"] = std::move(o.result);
    report["exit_code"] = o.code;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"seconds", secs}};
    if (cfg.json) {
      const std::string dumped = report.dump(2) + "\n";
      out << dumped;
    } else {
      out << o.text;
    }
    if (cfg.json && !cfg.output.empty() && name != "helly") write_file(cfg.output, report.dump(2) + "\n");
    return o.code;
  } catch (const Error& e) {
    const int code = code_for_error(e.code());
    err << "error: " << e.what() << "\n";
    if (cfg.json) {
      report["config"] = to_json(cfg);
      report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.detail()}, {"indices", e.indices()}};
      report["exit_code"] = code;
      out << report.dump(2) << "\n";
    }
    return code;
  }
}

}  // namespace hyperball
