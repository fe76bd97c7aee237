#include "hyperball/error.hpp"

namespace hyperball {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NegativeOrNonzeroDiagonal: return "NegativeOrNonzeroDiagonal";
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::CenterNotInA: return "CenterNotInA";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::PairwiseIntersectionUnverified: return "PairwiseIntersectionUnverified";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TupleTooLarge: return "TupleTooLarge";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::ContractionNotGuaranteed: return "ContractionNotGuaranteed";
    case ErrorCode::KSubfamilyEmpty: return "KSubfamilyEmpty";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail, std::vector<std::size_t> indices)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      indices_(std::move(indices)),
      detail_(detail) {}

}  // namespace hyperball
