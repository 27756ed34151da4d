#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vkerr {

enum class ErrorCode {
  InvalidParams,
  ConfigError,
  InvalidArgument,
  DegenerateDressing,
  SingularSteadyState,
  SingularKernel,
  NonConvergedTruncation,
  DegenerateNullSpace,
  NoLimitCycle,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vkerr
