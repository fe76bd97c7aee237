#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hyperball/report.hpp"
#include "hyperball/scalar.hpp"

namespace hyperball {

using Matrix = std::vector<std::vector<Scalar>>;

/// Largest point count accepted by the exhaustive (triple / tuple) scans.
inline constexpr std::size_t kEnumerationCap = 12;

/// A validated finite metric space. Only validate_metric and graph_metric
/// construct one, so every instance satisfies the metric axioms.
class FiniteMetricSpace {
 public:
  std::size_t size() const { return dist_.size(); }
  const Scalar& d(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const Matrix& matrix() const { return dist_; }

  /// Sorted distinct values of the matrix, including 0.
  std::vector<Scalar> distance_values() const;
  Scalar diameter() const;

 private:
  explicit FiniteMetricSpace(Matrix dist) : dist_(std::move(dist)) {}
  friend FiniteMetricSpace validate_metric(const Matrix& matrix);

  Matrix dist_;
};

struct GraphInstance {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Scalar> weights;  // empty means unit weights
};

/// Checks, in order: shape, zero diagonal, symmetry, positive off-diagonal
/// entries, triangle inequality d(i,j) <= d(i,k) + d(k,j). The first
/// violation is thrown with its indices; a triangle violation reports (i,j,k).
FiniteMetricSpace validate_metric(const Matrix& matrix);

/// All-pairs shortest paths (exact Floyd-Warshall).
FiniteMetricSpace graph_metric(const GraphInstance& graph);

/// (y|z)_x = (d(x,y) + d(x,z) - d(y,z)) / 2.
Scalar gromov_product(const FiniteMetricSpace& s, std::size_t y, std::size_t z, std::size_t x);

std::vector<std::size_t> metric_interval(const FiniteMetricSpace& s, std::size_t x, std::size_t y);

std::vector<std::size_t> median_set(const FiniteMetricSpace& s, std::size_t x, std::size_t y,
                                    std::size_t z);

/// Exhaustive over all triples. The certificate lists every triple (0-based,
/// i < j < k) with an empty median set; "triple" is the first of them.
PropertyReport is_modular(const FiniteMetricSpace& s);

}  // namespace hyperball
