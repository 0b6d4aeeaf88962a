#include "spdecay_tools/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spdecay/error.hpp"

namespace spdecay::tools {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(int line, const std::string& what) {
  throw Error(ErrorCode::Config,
              (line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) + what);
}

double parse_number(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    config_error(line, "key '" + std::string(key) + "' expects a finite number, got '" +
                           std::string(text) + "'");
  }
  return value;
}

int parse_integer(std::string_view text, int line, std::string_view key) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    config_error(line, "key '" + std::string(key) + "' expects an integer");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, int line, std::string_view key) {
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    values.push_back(parse_number(text.substr(0, comma), line, key));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

}  // namespace

std::string_view sweep_parameter_name(SweepParameter parameter) noexcept {
  switch (parameter) {
    case SweepParameter::StrengthSq: return "g_sq";
    case SweepParameter::Cutoff: return "lambda_cutoff";
    case SweepParameter::LevelGap: return "level_gap";
  }
  return "";
}

Scenario parse_scenario(std::string_view text) {
  Scenario scenario;
  std::map<std::string, int> seen;
  bool have_family = false;
  bool have_e1 = false;
  bool have_e2 = false;
  bool have_strength = false;
  bool have_cutoff = false;
  std::optional<SweepParameter> sweep_parameter;
  std::optional<std::vector<double>> sweep_values;

  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) config_error(line_no, "empty key");
    if (!seen.emplace(key, line_no).second) config_error(line_no, "duplicate key '" + key + "'");

    if (key == "name") {
      scenario.name = std::string(value);
    } else if (key == "model.e1") {
      scenario.params.e1 = parse_number(value, line_no, key);
      have_e1 = true;
    } else if (key == "model.e2") {
      scenario.params.e2 = parse_number(value, line_no, key);
      have_e2 = true;
    } else if (key == "coupling.family") {
      const auto family = parse_family(value);
      if (!family) config_error(line_no, "unknown coupling family '" + std::string(value) + "'");
      scenario.params.coupling.family = *family;
      have_family = true;
    } else if (key == "coupling.g_sq") {
      scenario.params.coupling.strength_sq = parse_number(value, line_no, key);
      have_strength = true;
    } else if (key == "coupling.lambda_cutoff") {
      scenario.params.coupling.cutoff = parse_number(value, line_no, key);
      have_cutoff = true;
    } else if (key == "quadrature.abs_tol") {
      scenario.quadrature.abs_tol = parse_number(value, line_no, key);
    } else if (key == "quadrature.rel_tol") {
      scenario.quadrature.rel_tol = parse_number(value, line_no, key);
    } else if (key == "quadrature.max_subdivisions") {
      scenario.quadrature.max_subdivisions = parse_integer(value, line_no, key);
    } else if (key == "quadrature.pv_window") {
      scenario.quadrature.pv_window = parse_number(value, line_no, key);
    } else if (key == "quadrature.tail_cut") {
      scenario.quadrature.tail_cut = parse_number(value, line_no, key);
    } else if (key == "evolution.horizon") {
      scenario.horizon = parse_number(value, line_no, key);
    } else if (key == "evolution.points") {
      scenario.points = parse_integer(value, line_no, key);
    } else if (key == "volterra.step") {
      scenario.volterra_step = parse_number(value, line_no, key);
    } else if (key == "output.dir") {
      scenario.output_dir = std::string(value);
    } else if (key == "sweep.parameter") {
      if (value == "g_sq") {
        sweep_parameter = SweepParameter::StrengthSq;
      } else if (value == "lambda_cutoff") {
        sweep_parameter = SweepParameter::Cutoff;
      } else if (value == "level_gap") {
        sweep_parameter = SweepParameter::LevelGap;
      } else {
        config_error(line_no, "unknown sweep parameter '" + std::string(value) + "'");
      }
    } else if (key == "sweep.values") {
      sweep_values = parse_list(value, line_no, key);
    } else {
      config_error(line_no, "unknown key '" + key + "'");
    }
  }

  if (!have_family || !have_e1 || !have_e2 || !have_strength || !have_cutoff) {
    config_error(0,
                 "missing required key (model.e1, model.e2, coupling.family, "
                 "coupling.g_sq, coupling.lambda_cutoff)");
  }
  if (sweep_parameter.has_value() != sweep_values.has_value()) {
    config_error(0, "sweep.parameter and sweep.values must be given together");
  }
  if (sweep_parameter) scenario.sweep = SweepSpec{*sweep_parameter, *sweep_values};
  validate(scenario);
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

void validate(const Scenario& scenario) {
  if (scenario.name.empty()) throw Error(ErrorCode::Config, "scenario name must be nonempty");
  if (scenario.name.find_first_of("/\\") != std::string::npos) {
    throw Error(ErrorCode::Config, "scenario name must not contain path separators");
  }
  try {
    spdecay::validate(scenario.params);
    spdecay::validate(scenario.quadrature);
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  if (scenario.horizon && !(*scenario.horizon > 0.0)) {
    throw Error(ErrorCode::Config, "evolution.horizon must be positive");
  }
  if (scenario.points < 1) throw Error(ErrorCode::Config, "evolution.points must be >= 1");
  if (scenario.volterra_step && !(*scenario.volterra_step > 0.0)) {
    throw Error(ErrorCode::Config, "volterra.step must be positive");
  }
  if (scenario.sweep) {
    if (scenario.sweep->values.empty()) {
      throw Error(ErrorCode::Config, "sweep.values must not be empty");
    }
    for (double v : scenario.sweep->values) {
      const bool nonneg_ok = scenario.sweep->parameter == SweepParameter::StrengthSq;
      if (!std::isfinite(v) || v < 0.0 || (!nonneg_ok && v == 0.0)) {
        throw Error(ErrorCode::Config,
                    "sweep value out of range for " +
                        std::string(sweep_parameter_name(scenario.sweep->parameter)));
      }
    }
  }
}

ModelParams with_sweep_value(const ModelParams& params, SweepParameter parameter,
                             double value) {
  ModelParams out = params;
  switch (parameter) {
    case SweepParameter::StrengthSq: out.coupling.strength_sq = value; break;
    case SweepParameter::Cutoff: out.coupling.cutoff = value; break;
    case SweepParameter::LevelGap: out.e2 = out.e1 + value; break;
  }
  return out;
}

}  // namespace spdecay::tools
