#include "spdecay/error.hpp"

namespace spdecay {

std::string_view error_tag(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::InvalidSingularity: return "invalid_singularity";
    case ErrorCode::DivergentAtEdge: return "divergent_at_e1";
    case ErrorCode::NoEigenvalue: return "no_eigenvalue";
    case ErrorCode::BracketFailure: return "bracket_failure";
    case ErrorCode::MarginalThreshold: return "marginal_threshold";
    case ErrorCode::NormalizationFailure: return "normalization_failure";
    case ErrorCode::OscillatoryBudgetExceeded: return "oscillatory_budget_exceeded";
    case ErrorCode::StepTooLarge: return "step_too_large";
    case ErrorCode::KernelMismatch: return "kernel_mismatch";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace spdecay
