#include "ffdm/error.hpp"

namespace ffdm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::OrderSingular: return "OrderSingular";
    case ErrorCode::SkewnessOutOfRange: return "SkewnessOutOfRange";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NonFinite:
      return ErrorCategory::Solver;
    case ErrorCode::NoFeasiblePoint:
      return ErrorCategory::Fit;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace ffdm
