#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hyperball/scalar.hpp"

namespace hyperball {

/// One inequality a . x <= b.
struct LinearRow {
  std::vector<Scalar> a;
  Scalar b;
};

struct LinearSystem {
  std::size_t dim = 0;
  std::vector<LinearRow> rows;
};

enum class LpMethod {
  automatic,        // Fourier-Motzkin for small systems, simplex otherwise
  fourier_motzkin,  // still falls back to simplex if elimination blows up
  simplex,
};

/// Systems up to this size go through Fourier-Motzkin under `automatic`.
inline constexpr std::size_t kFmMaxDim = 6;
inline constexpr std::size_t kFmMaxRows = 40;

/// Exact feasibility. Returns a point satisfying every row, or nullopt when
/// the system is infeasible.
std::optional<std::vector<Scalar>> find_feasible_point(const LinearSystem& system,
                                                       LpMethod method = LpMethod::automatic);

struct LpMinimum {
  std::vector<Scalar> point;
  Scalar value;
};

/// Exact minimum of objective . x. Returns nullopt when infeasible; throws
/// Error{ParamOutOfRange} when the objective is unbounded below.
std::optional<LpMinimum> minimize(const LinearSystem& system, const std::vector<Scalar>& objective,
                                  LpMethod method = LpMethod::automatic);

bool satisfies(const LinearSystem& system, const std::vector<Scalar>& x);

/// Which route the last call on this thread used; exposed for tests.
LpMethod last_lp_route();

}  // namespace hyperball
