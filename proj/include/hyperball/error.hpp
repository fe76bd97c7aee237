#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperball {

enum class ErrorCode {
  // metric-core
  Asymmetric,
  NegativeOrNonzeroDiagonal,
  NonPositiveDistance,
  TriangleViolation,
  Disconnected,
  InvalidGraph,
  IndexOutOfRange,
  SizeCapExceeded,
  // linf-geometry
  DimMismatch,
  EmptySet,
  ParamOutOfRange,
  PointNotInSet,
  EmptyBox,
  EmptyIntersection,
  // hyperconvexity-lab
  NotAdmissible,
  CenterNotInA,
  DimTooSmall,
  // refinement-engine
  OracleFailure,
  PairwiseIntersectionUnverified,
  // bicombing-barycenter
  NoConvergence,
  TupleTooLarge,
  KTooSmall,
  ContractionNotGuaranteed,
  KSubfamilyEmpty,
  // cli-io
  ParseError,
  ValidationError,
  UsageError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `indices()` carries the structured
/// location of the failure (matrix indices, oracle step, offending ball, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::vector<std::size_t> indices = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
  std::string detail_;
};

}  // namespace hyperball
