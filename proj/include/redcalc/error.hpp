#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace redcalc {

// Every failure raised by the library carries one of these codes. The CLI
// prints the code name on stderr, so names are part of the external surface.
enum class ErrorCode : std::uint8_t {
  // probkit
  AllZeroCounts,
  ShapeMismatch,
  InvalidProbabilities,
  UnknownVariable,
  EmptySubset,
  NonPositiveStates,
  LengthMismatch,
  MeaningCountBelowOne,
  ZeroMaxEntropy,
  SystemExceedsMax,
  // multivariate
  TooManyVariables,
  SubsetTooSmall,
  WrongArity,
  InconsistentDecomposition,
  // anticipatory
  ParameterOutOfRange,
  StateOutOfRange,
  DiscriminantNegative,
  InvalidSpec,
  TrajectoryTooShort,
  GridError,
  // structure
  InvalidGraph,
  GraphTooSmall,
  MalformedEdge,
  // dataio
  EmptyInput,
  RaggedRow,
  DuplicateHeader,
  UnknownColumn,
  NonNumericColumn,
  TooFewDistinctValues,
  UnbinnedNumericColumn,
  InvalidBinning,
  UnreadableFile,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace redcalc
