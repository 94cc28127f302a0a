#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fogsim {

enum class ErrorCode {
  kSchedulingInPast,
  kStaleReport,
  kNoEligibleNodes,
  kEmptyResultSet,
  kPileUnavailable,
  kCyclicFlow,
  kInvalidFlow,
  kFlowNotResident,
  kCapacityExceeded,
  kParseError,
  kUnknownKey,
  kInvalidValue,
  kIoError,
  kMixedSweepVariables,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for every failure the library reports. Callers that
// care about the category switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fogsim
