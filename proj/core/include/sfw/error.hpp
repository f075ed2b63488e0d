#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfw {

enum class ErrorCode {
  MismatchedAtomTable,
  PointNotBelowLambda,
  ParseError,
  ForeignCondition,
  UnboundVariable,
  InvalidFilter,
  NotAPosetName,
  NotAnIterationObject,
  ArityMismatch,
  OutOfBudget,
  MixedRepresentation,
  CodomainMismatch,
  AmbientMismatch,
  GroupTooLarge,
  NotAFilter,
  NotAnInclusion,
  StageMissing,
  InvalidTemplate,
  NotALimit,
  StageSchemaMissing,
  StageMismatch,
  WrongCofinality,
  CorpusNotHS,
  StageOutOfRange,
  WitnessNotFinite,
  WrongMode,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can name the violated contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sfw
