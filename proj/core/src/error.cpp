#include "sfw/error.hpp"

namespace sfw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedAtomTable: return "MismatchedAtomTable";
    case ErrorCode::PointNotBelowLambda: return "PointNotBelowLambda";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ForeignCondition: return "ForeignCondition";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::InvalidFilter: return "InvalidFilter";
    case ErrorCode::NotAPosetName: return "NotAPosetName";
    case ErrorCode::NotAnIterationObject: return "NotAnIterationObject";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::OutOfBudget: return "OutOfBudget";
    case ErrorCode::MixedRepresentation: return "MixedRepresentation";
    case ErrorCode::CodomainMismatch: return "CodomainMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotAFilter: return "NotAFilter";
    case ErrorCode::NotAnInclusion: return "NotAnInclusion";
    case ErrorCode::StageMissing: return "StageMissing";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::NotALimit: return "NotALimit";
    case ErrorCode::StageSchemaMissing: return "StageSchemaMissing";
    case ErrorCode::StageMismatch: return "StageMismatch";
    case ErrorCode::WrongCofinality: return "WrongCofinality";
    case ErrorCode::CorpusNotHS: return "CorpusNotHS";
    case ErrorCode::StageOutOfRange: return "StageOutOfRange";
    case ErrorCode::WitnessNotFinite: return "WitnessNotFinite";
    case ErrorCode::WrongMode: return "WrongMode";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace sfw
