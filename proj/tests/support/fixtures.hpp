#pragma once

// Shared test fixtures and independent oracles. Nothing here calls into the
// library code paths it is used to check.

#include <cstdint>
#include <queue>
#include <vector>

#include "hyperball/linf.hpp"
#include "hyperball/metric.hpp"
#include "hyperball/rng.hpp"

namespace fixtures {

using hyperball::Scalar;

inline hyperball::Matrix int_matrix(const std::vector<std::vector<long>>& m) {
  hyperball::Matrix out;
  for (const auto& row : m) {
    out.emplace_back();
    for (long v : row) out.back().emplace_back(v);
  }
  return out;
}

inline hyperball::GraphInstance path_graph(std::size_t n) {
  hyperball::GraphInstance g{n, {}, {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

inline hyperball::GraphInstance cycle_graph(std::size_t n) {
  hyperball::GraphInstance g = path_graph(n);
  g.edges.push_back({n - 1, 0});
  return g;
}

inline hyperball::GraphInstance complete_graph(std::size_t n) {
  hyperball::GraphInstance g{n, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j});
  }
  return g;
}

/// Tree from a Pruefer sequence drawn with the given generator (n >= 2).
inline hyperball::GraphInstance random_tree(std::size_t n, hyperball::Rng& rng) {
  hyperball::GraphInstance g{n, {}, {}};
  if (n == 2) {
    g.edges.push_back({0, 1});
    return g;
  }
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = rng.below(n);
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

/// Unit-weight BFS distances, written independently of graph_metric.
inline std::vector<std::vector<long>> bfs_distances(const hyperball::GraphInstance& g) {
  std::vector<std::vector<std::size_t>> adj(g.n);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::vector<long>> out(g.n, std::vector<long>(g.n, -1));
  for (std::size_t s = 0; s < g.n; ++s) {
    std::queue<std::size_t> q;
    q.push(s);
    out[s][s] = 0;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        if (out[s][v] < 0) {
          out[s][v] = out[s][u] + 1;
          q.push(v);
        }
      }
    }
  }
  return out;
}

/// Random point set in l-infinity^dim with small integer coordinates; its
/// distance matrix is a metric whenever the points are distinct.
inline hyperball::Matrix random_linf_metric(std::size_t n, std::size_t dim, hyperball::Rng& rng) {
  std::vector<std::vector<long>> pts;
  while (pts.size() < n) {
    std::vector<long> p(dim);
    for (auto& c : p) c = rng.between(-6, 6);
    bool fresh = true;
    for (const auto& q : pts) fresh = fresh && q != p;
    if (fresh) pts.push_back(p);
  }
  hyperball::Matrix m(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long best = 0;
      for (std::size_t k = 0; k < dim; ++k) best = std::max(best, std::labs(pts[i][k] - pts[j][k]));
      m[i][j] = best;
    }
  }
  return m;
}

/// Random weighted graph metric: a spanning path plus random chords, rational weights.
inline hyperball::GraphInstance random_weighted_graph(std::size_t n, hyperball::Rng& rng) {
  hyperball::GraphInstance g = path_graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (rng.below(3) == 0) g.edges.push_back({i, j});
    }
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Scalar w(static_cast<long>(rng.between(1, 12)), static_cast<unsigned long>(rng.between(1, 4)));
    w.canonicalize();
    g.weights.push_back(w);
  }
  return g;
}

inline hyperball::LinfPoint point(std::initializer_list<long> coords) {
  hyperball::LinfPoint p;
  for (long c : coords) p.emplace_back(c);
  return p;
}

inline Scalar q(long p, long d = 1) {
  Scalar v(p, d);
  v.canonicalize();
  return v;
}

/// Random rational in [lo, hi] with denominator in {1,2,4,8}.
inline Scalar random_dyadic(hyperball::Rng& rng, long lo, long hi) {
  const long den = 1L << rng.below(4);
  return q(rng.between(lo * den, hi * den), den);
}

inline hyperball::LinfPoint random_point(hyperball::Rng& rng, std::size_t dim, long lo, long hi) {
  hyperball::LinfPoint p(dim);
  for (auto& c : p) c = random_dyadic(rng, lo, hi);
  return p;
}

inline hyperball::Box random_box(hyperball::Rng& rng, std::size_t dim, long lo, long hi) {
  hyperball::Box b;
  for (std::size_t k = 0; k < dim; ++k) {
    Scalar a = random_dyadic(rng, lo, hi), c = random_dyadic(rng, lo, hi);
    b.lo.push_back(hyperball::min(a, c));
    b.hi.push_back(hyperball::max(a, c));
  }
  return b;
}

}  // namespace fixtures
