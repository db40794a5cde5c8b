#include "pot/errors.hpp"

namespace pot {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::MalformedCsv: return "MalformedCsv";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::NegativeLabel: return "NegativeLabel";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnsortedInput: return "UnsortedInput";
    case ErrorKind::MassMismatch: return "MassMismatch";
    case ErrorKind::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorKind::BatchTooSmall: return "BatchTooSmall";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NumericalUnderflow: return "NumericalUnderflow";
  }
  return "UnknownError";
}

ErrorCategory error_category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoFailure:
      return ErrorCategory::Io;
    case ErrorKind::NumericalUnderflow:
      return ErrorCategory::Solver;
    default:
      return ErrorCategory::Validation;
  }
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace pot
