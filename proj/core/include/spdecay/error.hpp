#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spdecay {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  InvalidSingularity,
  DivergentAtEdge,
  NoEigenvalue,
  BracketFailure,
  MarginalThreshold,
  NormalizationFailure,
  OscillatoryBudgetExceeded,
  StepTooLarge,
  KernelMismatch,
  Config,
};

/// Short lowercase tag used in machine-readable diagnostics.
std::string_view error_tag(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spdecay
