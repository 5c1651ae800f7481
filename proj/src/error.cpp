#include "hallmed/error.hpp"

namespace hallmed {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSet: return "DuplicateSet";
    case ErrorCode::SetTooSmall: return "SetTooSmall";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::MalformedToken: return "MalformedToken";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::MalformedNewick: return "MalformedNewick";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::EdgeNotInTree: return "EdgeNotInTree";
    case ErrorCode::LabelNotInTree: return "LabelNotInTree";
    case ErrorCode::NonDistinctArguments: return "NonDistinctArguments";
    case ErrorCode::UnlabeledLeaf: return "UnlabeledLeaf";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::NotTripleSystem: return "NotTripleSystem";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::NoReduction: return "NoReduction";
    case ErrorCode::CannotViolate: return "CannotViolate";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace hallmed
