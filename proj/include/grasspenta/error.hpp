#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grasspenta {

enum class ErrorKind {
  InvalidDims,
  GenerationFailed,
  NotRegular,
  SingularFrame,
  NotCoprime,
  ZeroInput,
  NonGenericGauge,
  DegenerateSyzygy,
  NonGenericIntersection,
  SingularN,
  ZeroMu,
  InterpolationIllConditioned,
  DegenerateDiagonals,
  SingularMatrix,
  FormatError,
};

std::string_view to_string(ErrorKind kind);

// Domain failure raised by library operations. The kind is machine readable;
// the CLI maps it to exit codes and an error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace grasspenta
