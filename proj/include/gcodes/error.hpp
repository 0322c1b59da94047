#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcodes {

enum class ErrorCode {
  InvalidArgument,
  // gf
  NotPrime,
  ReducibleModulus,
  FieldTooLarge,
  DivisionByZero,
  // linalg
  AmbientMismatch,
  NotSubspace,
  EqualHyperplanes,
  // codes
  TooLargeExact,
  BadT,
  DimensionMismatch,
  BadIndices,
  // grassmann
  EnumerationTooLarge,
  VertexAbsent,
  // construct
  BadHyperplane,
  RepInH,
  DependentVectors,
  NotEnoughPoints,
  DuplicatePoints,
  PreconditionDepth,
  NoStepFound,
  NoShrinkFound,
  BadU,
  PathFailed,
  NoLambda,
  NotInCt,
  // io
  ParseError,
  FieldMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gcodes
