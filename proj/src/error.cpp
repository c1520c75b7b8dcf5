#include "forge/error.hpp"

namespace forge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::OddAction: return "OddAction";
    case ErrorKind::CubeTooLarge: return "CubeTooLarge";
    case ErrorKind::SeparabilityViolated: return "SeparabilityViolated";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::TooLargeForDense: return "TooLargeForDense";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace forge
