#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdecay/model.hpp"
#include "spdecay/quadrature.hpp"

namespace spdecay::tools {

enum class SweepParameter { StrengthSq, Cutoff, LevelGap };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::StrengthSq;
  std::vector<double> values;
};

struct Scenario {
  std::string name;
  ModelParams params;
  QuadratureConfig quadrature;
  std::optional<double> horizon;  // default 200 / (E2 - E1)
  int points = 2000;
  std::optional<double> volterra_step;
  std::filesystem::path output_dir = ".";
  std::optional<SweepSpec> sweep;

  double effective_horizon() const {
    return horizon ? *horizon : 200.0 / params.level_gap();
  }
};

/// Parses the flat "dotted.key = value" format; '#' starts a comment.
/// Throws Error(Config) with the offending line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws Error(Config) on any invariant violation.
void validate(const Scenario& scenario);

/// Model parameters with the sweep parameter set to value.
ModelParams with_sweep_value(const ModelParams& params, SweepParameter parameter,
                             double value);

std::string_view sweep_parameter_name(SweepParameter parameter) noexcept;

}  // namespace spdecay::tools
