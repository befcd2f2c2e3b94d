#include "grasspenta/error.hpp"

namespace grasspenta {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDims: return "InvalidDims";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::SingularFrame: return "SingularFrame";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::NonGenericGauge: return "NonGenericGauge";
    case ErrorKind::DegenerateSyzygy: return "DegenerateSyzygy";
    case ErrorKind::NonGenericIntersection: return "NonGenericIntersection";
    case ErrorKind::SingularN: return "SingularN";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::InterpolationIllConditioned: return "InterpolationIllConditioned";
    case ErrorKind::DegenerateDiagonals: return "DegenerateDiagonals";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace grasspenta
