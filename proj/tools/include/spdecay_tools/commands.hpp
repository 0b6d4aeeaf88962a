#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "spdecay/error.hpp"
#include "spdecay_tools/scenario.hpp"

namespace spdecay::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitConfig = 3;

/// decay exits with kExitNumerical when the two routes differ by more than this.
inline constexpr double kDecayDeviationLimit = 1e-2;
/// Target accuracy handed to the Volterra step-halving check.
inline constexpr double kVolterraTargetTolerance = 1e-3;

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<double> abs_tol;
  std::optional<double> horizon;
  unsigned jobs = 1;
};

Scenario apply_overrides(Scenario scenario, const RunOptions& options);

int exit_code_for(ErrorCode code) noexcept;

/// One line: "spdecay: error=<tag> exit=<code> message=\"...\"".
void report_error(std::ostream& diag, const Error& error);

/// Each command writes its artifacts into scenario.output_dir and returns a
/// process exit code; failures are reported on `diag`.
int cmd_spectrum(const Scenario& scenario, std::ostream& diag);
int cmd_decay(const Scenario& scenario, std::ostream& diag);
int cmd_threshold_sweep(const Scenario& scenario, unsigned jobs, std::ostream& diag);
int cmd_verify(const std::filesystem::path& out_dir, unsigned jobs, std::ostream& log,
               std::ostream& diag);

}  // namespace spdecay::tools
