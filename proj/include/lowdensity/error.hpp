#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowdensity {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  ZeroColumn,
  NotNormalized,
  NotPowerOfTwo,
  RowMismatch,
  DimensionMismatch,
  AlphaOutOfRange,
  KOutOfRange,
  ZeroSignal,
  EmptySupport,
  InvalidSupport,
  TrivialCoherence,
  NonPositiveMu,
  TMaxOutOfRange,
  EmptyRemaining,
  RankDeficient,
  TrivialKernel,
  TooLarge,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the contract that
/// was violated; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lowdensity
