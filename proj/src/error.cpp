#include "vkerr/error.hpp"

namespace vkerr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateDressing: return "DegenerateDressing";
    case ErrorCode::SingularSteadyState: return "SingularSteadyState";
    case ErrorCode::SingularKernel: return "SingularKernel";
    case ErrorCode::NonConvergedTruncation: return "NonConvergedTruncation";
    case ErrorCode::DegenerateNullSpace: return "DegenerateNullSpace";
    case ErrorCode::NoLimitCycle: return "NoLimitCycle";
  }
  return "Unknown";
}

}  // namespace vkerr
