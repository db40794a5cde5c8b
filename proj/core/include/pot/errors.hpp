#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pot {

enum class ErrorKind {
  IoFailure,
  MalformedHeader,
  MalformedCsv,
  DimensionMismatch,
  NonFiniteValue,
  NegativeLabel,
  LabelOutOfRange,
  EmptyClass,
  InvalidArgument,
  UnsortedInput,
  MassMismatch,
  OmegaOutOfRange,
  BatchTooSmall,
  EmptyInput,
  InvalidSpec,
  NumericalUnderflow,
};

// Coarse grouping used by the command-line tool to pick an exit code.
enum class ErrorCategory { Io, Validation, Solver };

std::string_view error_name(ErrorKind kind);
ErrorCategory error_category(ErrorKind kind);

// All library failures are reported through this type. what() is prefixed
// with the error name, e.g. "NonFiniteValue: row 3, column 1".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return error_category(kind_); }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace pot
