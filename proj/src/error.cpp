#include "redcalc/error.hpp"

namespace redcalc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AllZeroCounts: return "AllZeroCounts";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidProbabilities: return "InvalidProbabilities";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::NonPositiveStates: return "NonPositiveStates";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MeaningCountBelowOne: return "MeaningCountBelowOne";
    case ErrorCode::ZeroMaxEntropy: return "ZeroMaxEntropy";
    case ErrorCode::SystemExceedsMax: return "SystemExceedsMax";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::InconsistentDecomposition: return "InconsistentDecomposition";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::StateOutOfRange: return "StateOutOfRange";
    case ErrorCode::DiscriminantNegative: return "DiscriminantNegative";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::TrajectoryTooShort: return "TrajectoryTooShort";
    case ErrorCode::GridError: return "GridError";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::GraphTooSmall: return "GraphTooSmall";
    case ErrorCode::MalformedEdge: return "MalformedEdge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::DuplicateHeader: return "DuplicateHeader";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NonNumericColumn: return "NonNumericColumn";
    case ErrorCode::TooFewDistinctValues: return "TooFewDistinctValues";
    case ErrorCode::UnbinnedNumericColumn: return "UnbinnedNumericColumn";
    case ErrorCode::InvalidBinning: return "InvalidBinning";
    case ErrorCode::UnreadableFile: return "UnreadableFile";
  }
  return "Unknown";
}

}  // namespace redcalc
