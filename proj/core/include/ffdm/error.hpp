#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffdm {

enum class ErrorCode {
  OrderOutOfRange,
  OrderSingular,
  SkewnessOutOfRange,
  InvalidScheme,
  DomainError,
  IndexError,
  InvalidDomain,
  DimensionMismatch,
  SingularMatrix,
  NonFinite,
  InvalidProfile,
  NoFeasiblePoint,
  InvalidArgument,
};

/// Coarse grouping used by front ends to pick an exit status.
enum class ErrorCategory { Validation, Solver, Fit };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ffdm
