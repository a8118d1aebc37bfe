#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphpde {

enum class ErrorCode {
  // graph construction and domains
  ConflictingWeight,
  SelfLoop,
  NonpositiveWeight,
  IsolatedVertex,
  UnknownVertex,
  EmptyOmega,
  DisconnectedOmega,
  EmptyInterior,
  EmptyBoundary,
  MissingValue,
  // operators
  InteriorOnly,
  // variational layer
  QuadratureFailure,
  DegenerateDomain,
  InvalidParameters,
  ConstraintViolation,
  // solvers
  HypothesisViolated,
  NonMonotoneG,
  SingularJacobian,
  // verification
  NotASolution,
  HNotAdmissible,
  // expressions and files
  SyntaxError,
  UnknownIdentifier,
  EvalError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphpde
