#pragma once

#include <stdexcept>
#include <string>

namespace forge {

enum class ErrorKind {
  NotPrime,
  Reducible,
  DegreeMismatch,
  SpecMismatch,
  DivisionByZero,
  NotASubfield,
  SingularBasis,
  AmbientMismatch,
  CapExceeded,
  NotAnAction,
  TooLarge,
  OddAction,
  CubeTooLarge,
  SeparabilityViolated,
  Disconnected,
  NoConvergence,
  TooLargeForDense,
  TooLargeForExact,
  NotCovered,
  NotSymmetric,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// All library failures carry a machine-readable kind. what() renders as
/// "Kind(detail)", e.g. "NotPrime(9)".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + "(" + detail + ")"),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace forge
