#include <bit>
#include <string>

#include "hyperball/error.hpp"
#include "hyperball/lab.hpp"

namespace hyperball {

namespace {

// a . x <= b with a given by (index, coefficient) pairs.
LinearRow sparse_row(std::size_t dim, std::initializer_list<std::pair<std::size_t, long>> terms, long b) {
  LinearRow row{std::vector<Scalar>(dim, Scalar(0)), Scalar(b)};
  for (auto [k, c] : terms) row.a[k] = c;
  return row;
}

HPolyhedron intersect(const std::vector<HPolyhedron>& sets, std::uint32_t mask) {
  HPolyhedron out{sets.empty() ? 0 : sets.front().dim, {}};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (mask & (1u << i)) out.rows.insert(out.rows.end(), sets[i].rows.begin(), sets[i].rows.end());
  }
  return out;
}

Json indices_of(std::uint32_t mask, std::size_t m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m; ++i) {
    if (mask & (1u << i)) out.push_back(i);
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kBruteforceCap * 16) return r;  // large enough to refuse
  }
  return r;
}

}  // namespace

HellyInstance helly_counterexample(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::DimTooSmall, "the construction needs dimension at least 2", {n});
  HellyInstance inst;
  inst.n = n;
  // Paper indices are 1-based; coordinate x_i lives at index i - 1.
  inst.sets.push_back(HPolyhedron{n, {sparse_row(n, {{n - 1, -1}}, 0)}});  // x_n >= 0
  for (std::size_t j = 2; j <= n; ++j) {
    const std::size_t lead = n - j;  // x_{n-j+1}
    inst.sets.push_back(HPolyhedron{n, {sparse_row(n, {{lead, -1}, {lead + 1, 1}}, 0)}});
  }
  inst.sets.push_back(HPolyhedron{n, {sparse_row(n, {{0, 1}, {1, 1}}, -1)}});  // x_1 + x_2 <= -1

  const Scalar low(-5);
  LinfPoint first(n, low);
  first[0] = 0;
  inst.witnesses.push_back(first);
  if (n == 2) {
    inst.witnesses.push_back({low, Scalar(0)});
  } else {
    LinfPoint second(n, low);
    second[0] = 0;
    second[n - 1] = 0;
    inst.witnesses.push_back(second);
  }
  for (std::size_t j = 3; j <= n; ++j) {
    LinfPoint w(n, Scalar(0));
    for (std::size_t i = 0; i < n - j + 1; ++i) w[i] = low;
    inst.witnesses.push_back(w);
  }
  inst.witnesses.push_back(LinfPoint(n, Scalar(0)));
  return inst;
}

PropertyReport verify_helly_instance(const HellyInstance& instance) {
  PropertyReport report;
  report.check = "helly_instance";
  report.exhaustive = true;
  const std::size_t m = instance.sets.size();
  bool ok = m == instance.witnesses.size() && m == instance.n + 1;
  Json failures = Json::array();
  for (std::size_t j = 0; j < instance.witnesses.size() && j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      ++report.checked;
      if (!instance.sets[i].contains(instance.witnesses[j])) {
        ok = false;
        failures.push_back({{"witness", j}, {"set", i}});
      }
    }
  }
  const bool total_empty = !lp_feasible(intersect(instance.sets, (1u << m) - 1));
  ok = ok && total_empty;
  report.certificate = {{"witness_failures", failures}, {"total_intersection_empty", total_empty}};
  report.verdict = ok ? Verdict::holds : Verdict::refuted;
  return report;
}

PropertyReport helly_order_check(const std::vector<HPolyhedron>& sets, std::size_t k) {
  const std::size_t m = sets.size();
  if (m > kEnumerationCap) {
    throw Error(ErrorCode::SizeCapExceeded,
                "helly_order_check enumerates at most " + std::to_string(kEnumerationCap) + " sets", {m});
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (sets[i].dim != sets[0].dim) throw Error(ErrorCode::DimMismatch, "sets of different dimensions", {0, i});
  }
  PropertyReport report;
  report.check = "helly_order";
  report.exhaustive = true;
  report.certificate["k"] = k;
  if (k == 0) throw Error(ErrorCode::ParamOutOfRange, "Helly order must be positive");
  if (m <= k) {
    report.verdict = Verdict::holds;
    report.warnings.push_back("family has at most k sets; the condition is vacuous");
    return report;
  }
  // feasible[mask]; infeasibility is inherited by supersets.
  const std::uint32_t full = (1u << m) - 1;
  std::vector<signed char> feasible(full + 1, -1);
  feasible[0] = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    bool inherited_empty = false;
    for (std::size_t i = 0; i < m && !inherited_empty; ++i) {
      if ((mask & (1u << i)) && feasible[mask & ~(1u << i)] == 0) inherited_empty = true;
    }
    if (inherited_empty) {
      feasible[mask] = 0;
      continue;
    }
    feasible[mask] = lp_feasible(intersect(sets, mask)) ? 1 : 0;
    ++report.checked;
  }
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) <= k || feasible[mask]) continue;
    // Every k-subset of mask non-empty?
    bool all_k = true;
    for (std::uint32_t sub = mask; sub && all_k; sub = (sub - 1) & mask) {
      if (static_cast<std::size_t>(std::popcount(sub)) == k && !feasible[sub]) all_k = false;
    }
    if (!all_k) continue;
    Json witnesses = Json::array();
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (static_cast<std::size_t>(std::popcount(sub)) != k) continue;
      witnesses.push_back({{"sets", indices_of(sub, m)}, {"point", lp_feasible(intersect(sets, sub)).witness}});
    }
    report.verdict = Verdict::refuted;
    report.certificate["subfamily"] = indices_of(mask, m);
    report.certificate["k_fold_witnesses"] = witnesses;
    return report;
  }
  report.verdict = Verdict::holds;
  return report;
}

PropertyReport graph_n_helly_bruteforce(const GraphInstance& graph, std::size_t n) {
  if (graph.n > kEnumerationCap) {
    throw Error(ErrorCode::SizeCapExceeded,
                "graph brute force handles at most " + std::to_string(kEnumerationCap) + " vertices", {graph.n});
  }
  const FiniteMetricSpace space = graph_metric(graph);
  const std::size_t v = space.size();
  const std::vector<Scalar> radii = space.distance_values();  // 0 .. diam
  const std::size_t items = v * radii.size();
  if (n == 0) throw Error(ErrorCode::ParamOutOfRange, "family size must be positive");
  if (binomial(items + n - 1, n) > kBruteforceCap) {
    throw Error(ErrorCode::SizeCapExceeded, "too many families to enumerate", {items, n});
  }
  // Item t = (centre t / |radii|, radius t % |radii|); ball masks over vertices.
  std::vector<std::uint32_t> ball_mask(items, 0);
  for (std::size_t t = 0; t < items; ++t) {
    const std::size_t c = t / radii.size();
    for (std::size_t p = 0; p < v; ++p) {
      if (space.d(c, p) <= radii[t % radii.size()]) ball_mask[t] |= 1u << p;
    }
  }
  auto compatible = [&](std::size_t s, std::size_t t) {
    return space.d(s / radii.size(), t / radii.size()) <= radii[s % radii.size()] + radii[t % radii.size()];
  };

  PropertyReport report;
  report.check = "graph_n_helly";
  report.exhaustive = true;
  std::vector<std::size_t> tuple(n, 0);
  std::vector<std::uint32_t> common(n + 1, (1u << v) - 1);
  // Depth-first over non-decreasing item tuples, pruning inadmissible prefixes.
  std::size_t depth = 0;
  tuple[0] = 0;
  for (;;) {
    if (tuple[depth] >= items) {
      if (depth == 0) break;
      --depth;
      ++tuple[depth];
      continue;
    }
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i) ok = compatible(tuple[i], tuple[depth]);
    if (!ok) {
      ++tuple[depth];
      continue;
    }
    common[depth + 1] = common[depth] & ball_mask[tuple[depth]];
    if (depth + 1 == n) {
      ++report.checked;
      if (common[n] == 0) {
        Json family = Json::array();
        for (auto t : tuple) family.push_back({{"center", t / radii.size()}, {"r", radii[t % radii.size()]}});
        report.verdict = Verdict::refuted;
        report.certificate = {{"n", n}, {"family", family}};
        return report;
      }
      ++tuple[depth];
      continue;
    }
    ++depth;
    tuple[depth] = tuple[depth - 1];
  }
  report.verdict = Verdict::holds;
  report.certificate = {{"n", n}, {"radii", radii}};
  return report;
}

}  // namespace hyperball
