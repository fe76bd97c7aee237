#include "hyperball/metric.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "hyperball/error.hpp"

namespace hyperball {

namespace {

void check_index(const FiniteMetricSpace& s, std::size_t i) {
  if (i >= s.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " outside space of size " + std::to_string(s.size()),
                {i});
  }
}

}  // namespace

std::vector<Scalar> FiniteMetricSpace::distance_values() const {
  std::vector<Scalar> values;
  for (const auto& row : dist_) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

Scalar FiniteMetricSpace::diameter() const {
  Scalar best = 0;
  for (const auto& row : dist_) {
    for (const auto& v : row) best = max(best, v);
  }
  return best;
}

FiniteMetricSpace validate_metric(const Matrix& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorCode::ValidationError, "metric space must have at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw Error(ErrorCode::DimMismatch, "distance matrix is not square (row " + std::to_string(i) + ")",
                  {i});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0) {
      throw Error(ErrorCode::NegativeOrNonzeroDiagonal, "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0",
                  {i});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw Error(ErrorCode::Asymmetric,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" + std::to_string(j) + "," +
                        std::to_string(i) + ")",
                    {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] <= 0) {
        throw Error(ErrorCode::NonPositiveDistance,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") must be positive", {i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][j] > matrix[i][k] + matrix[k][j]) {
          throw Error(ErrorCode::TriangleViolation,
                      "d(" + std::to_string(i) + "," + std::to_string(j) + ") > d(" + std::to_string(i) + "," +
                          std::to_string(k) + ") + d(" + std::to_string(k) + "," + std::to_string(j) + ")",
                      {i, j, k});
        }
      }
    }
  }
  return FiniteMetricSpace(matrix);
}

FiniteMetricSpace graph_metric(const GraphInstance& graph) {
  const std::size_t n = graph.n;
  if (n == 0) throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
  if (!graph.weights.empty() && graph.weights.size() != graph.edges.size()) {
    throw Error(ErrorCode::InvalidGraph, "weights must match the edge list");
  }
  std::vector<std::vector<std::optional<Scalar>>> d(n, std::vector<std::optional<Scalar>>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Scalar(0);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [u, v] = graph.edges[e];
    if (u >= n || v >= n) throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range", {e});
    if (u == v) throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(u), {e});
    const Scalar w = graph.weights.empty() ? Scalar(1) : graph.weights[e];
    if (w <= 0) throw Error(ErrorCode::InvalidGraph, "edge weights must be positive", {e});
    if (!d[u][v] || w < *d[u][v]) {
      d[u][v] = w;
      d[v][u] = w;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Scalar via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
  }
  Matrix out(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!d[i][j]) {
        throw Error(ErrorCode::Disconnected,
                    "no path between " + std::to_string(i) + " and " + std::to_string(j), {i, j});
      }
      out[i][j] = *d[i][j];
    }
  }
  return validate_metric(out);
}

Scalar gromov_product(const FiniteMetricSpace& s, std::size_t y, std::size_t z, std::size_t x) {
  check_index(s, x);
  check_index(s, y);
  check_index(s, z);
  Scalar value = s.d(x, y) + s.d(x, z) - s.d(y, z);
  value /= 2;
  return value;
}

std::vector<std::size_t> metric_interval(const FiniteMetricSpace& s, std::size_t x, std::size_t y) {
  check_index(s, x);
  check_index(s, y);
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (s.d(x, z) + s.d(z, y) == s.d(x, y)) out.push_back(z);
  }
  return out;
}

std::vector<std::size_t> median_set(const FiniteMetricSpace& s, std::size_t x, std::size_t y,
                                    std::size_t z) {
  check_index(s, x);
  check_index(s, y);
  check_index(s, z);
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (s.d(x, m) + s.d(m, y) == s.d(x, y) && s.d(y, m) + s.d(m, z) == s.d(y, z) &&
        s.d(z, m) + s.d(m, x) == s.d(z, x)) {
      out.push_back(m);
    }
  }
  return out;
}

PropertyReport is_modular(const FiniteMetricSpace& s) {
  if (s.size() > kEnumerationCap) {
    throw Error(ErrorCode::SizeCapExceeded,
                "is_modular enumerates triples of at most " + std::to_string(kEnumerationCap) + " points",
                {s.size()});
  }
  PropertyReport report;
  report.check = "is_modular";
  report.exhaustive = true;
  Json refuting = Json::array();
  // Triples with a repeated point always have that point as a median.
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        ++report.checked;
        if (median_set(s, i, j, k).empty()) refuting.push_back({i, j, k});
      }
    }
  }
  if (refuting.empty()) {
    report.verdict = Verdict::holds;
  } else {
    report.verdict = Verdict::refuted;
    report.certificate["triple"] = refuting.front();
    report.certificate["refuting_triples"] = refuting;
  }
  return report;
}

}  // namespace hyperball
