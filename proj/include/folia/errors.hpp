#pragma once

#include <stdexcept>
#include <string>

namespace folia {

// Every failure mode the library reports deliberately.  Anything else
// escaping a folia call is a plain bug, not a contract violation.
enum class ErrorCode {
  NonUnitDeterminant,
  IndexOutOfRange,
  RadiusTooLarge,
  NonTermination,
  PathTooLong,
  DimensionMismatch,
  EigenFailure,
  StepOutOfRange,
  DegenerateFiber,
  TruncationError,
  EquivarianceFailure,
  ConstructionFailure,
  ParseError,
  ConfigError,
  SupViolation,
};

inline const char* name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorCode::IndexOutOfRange:    return "IndexOutOfRange";
    case ErrorCode::RadiusTooLarge:     return "RadiusTooLarge";
    case ErrorCode::NonTermination:     return "NonTermination";
    case ErrorCode::PathTooLong:        return "PathTooLong";
    case ErrorCode::DimensionMismatch:  return "DimensionMismatch";
    case ErrorCode::EigenFailure:       return "EigenFailure";
    case ErrorCode::StepOutOfRange:     return "StepOutOfRange";
    case ErrorCode::DegenerateFiber:    return "DegenerateFiber";
    case ErrorCode::TruncationError:    return "TruncationError";
    case ErrorCode::EquivarianceFailure:return "EquivarianceFailure";
    case ErrorCode::ConstructionFailure:return "ConstructionFailure";
    case ErrorCode::ParseError:         return "ParseError";
    case ErrorCode::ConfigError:        return "ConfigError";
    case ErrorCode::SupViolation:       return "SupViolation";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(name(c)) + ": " + msg), code(c) {}
  ErrorCode code;
};

[[noreturn]] inline void raise(ErrorCode c, const std::string& msg) {
  throw Error(c, msg);
}

}  // namespace folia
