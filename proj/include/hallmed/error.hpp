#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hallmed {

enum class ErrorCode {
  DuplicateSet,
  SetTooSmall,
  UnknownElement,
  MalformedToken,
  MalformedDocument,
  UnbalancedParens,
  MalformedNewick,
  DuplicateLabel,
  EmptyInput,
  InvalidTree,
  EdgeNotInTree,
  LabelNotInTree,
  NonDistinctArguments,
  UnlabeledLeaf,
  TooFewElements,
  NotTripleSystem,
  GroundMismatch,
  SizeGuardExceeded,
  ConditionViolated,
  NoReduction,
  CannotViolate,
  InvalidSpec,
  Internal,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hallmed
