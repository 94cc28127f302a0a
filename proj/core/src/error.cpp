#include "fogsim/error.hpp"

namespace fogsim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchedulingInPast: return "SchedulingInPast";
    case ErrorCode::kStaleReport: return "StaleReport";
    case ErrorCode::kNoEligibleNodes: return "NoEligibleNodes";
    case ErrorCode::kEmptyResultSet: return "EmptyResultSet";
    case ErrorCode::kPileUnavailable: return "PileUnavailable";
    case ErrorCode::kCyclicFlow: return "CyclicFlow";
    case ErrorCode::kInvalidFlow: return "InvalidFlow";
    case ErrorCode::kFlowNotResident: return "FlowNotResident";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kInvalidValue: return "InvalidValue";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMixedSweepVariables: return "MixedSweepVariables";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace fogsim
