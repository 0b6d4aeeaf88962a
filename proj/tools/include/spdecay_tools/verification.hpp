#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spdecay/model.hpp"

namespace spdecay::tools {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// "criterion <id> <name>: PASS|FAIL <detail>"
std::string format_criterion(const CriterionResult& result);

struct VerificationReport {
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
  std::string text() const;
};

struct MatrixScenario {
  std::string name;
  ModelParams params;
  bool above_threshold = false;
};

/// Six scenarios: {2D, 3D above threshold, 3D below threshold} x
/// {moderate, small coupling}, all with E1 = 0, E2 = 1, L = 1.
std::vector<MatrixScenario> acceptance_matrix();

/// Evaluates criteria 1 to 8 on the built-in matrix, writes per-scenario
/// density, summary and amplitude files plus verify_report.txt into out_dir,
/// and returns the results. Scenarios are spread over `jobs` threads; the
/// written bytes do not depend on it.
VerificationReport run_verification(const std::filesystem::path& out_dir, unsigned jobs);

/// Criterion 9: both directories hold the same file names with identical bytes.
CriterionResult compare_runs(const std::filesystem::path& first,
                             const std::filesystem::path& second);

}  // namespace spdecay::tools
