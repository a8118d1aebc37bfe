#include <graphpde/error.hpp>

namespace graphpde {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConflictingWeight: return "ConflictingWeight";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::EmptyOmega: return "EmptyOmega";
    case ErrorCode::DisconnectedOmega: return "DisconnectedOmega";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::InteriorOnly: return "InteriorOnly";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NonMonotoneG: return "NonMonotoneG";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::HNotAdmissible: return "HNotAdmissible";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace graphpde
