#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace witness_forge {

enum class ErrorCode {
  DuplicateLabel,
  UnknownLabel,
  CannotTraceAll,
  NotAPermutation,
  NotHermitian,
  NotSquare,
  BadDimension,
  BadParameter,
  DimensionMismatch,
  WrongPartyCount,
  WrongDimensions,
  NotPSD,
  NotPPT,
  OutOfProvenRange,
  ShapeMismatch,
  BadSpec,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code so the
/// CLI and the Python bindings can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace witness_forge
