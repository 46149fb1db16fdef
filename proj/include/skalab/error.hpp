#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skalab {

enum class ErrorCode {
  NotPrime,
  SpecMismatch,
  DivisionByZero,
  ParseError,
  ZeroVector,
  UnsupportedField,
  ChartInvalid,
  UnknownVertex,
  EmptyQuery,
  SizeTooLarge,
  ExhaustiveInfeasible,
  TooManyEdges,
  TooLarge,
  PhaseError,
  RoundMismatch,
  DegenerateH,
  NotCompleted,
  BadFrame,
  OutOfDomain,
  TargetOnBoundary,
  NotCovered,
  NumericalDegeneracy,
  EstimatorFailure,
  InvariantViolation,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skalab
