#include "spdecay_tools/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "spdecay/error.hpp"
#include "spdecay/evolution.hpp"
#include "spdecay/spectrum.hpp"
#include "spdecay/volterra.hpp"
#include "spdecay_tools/oracles.hpp"
#include "spdecay_tools/output.hpp"
#include "spdecay_tools/workers.hpp"

namespace spdecay::tools {

namespace fs = std::filesystem;

namespace {

constexpr double kNormalizationTol = 1e-6;
constexpr double kPlateauTol = 1e-2;
constexpr double kDecayedTol = 1e-2;
constexpr double kCrossTol = 1e-3;
constexpr double kShortTimeTol = 1e-5;
constexpr double kRateTol = 0.15;
constexpr double kOracleTol = 1e-8;

constexpr double kSampleStep = 0.05;
constexpr double kVolterraStep = 0.01;

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", v);
  return buffer;
}

ModelParams model(CouplingFamily family, double g_sq, double cutoff = 1.0, double gap = 1.0) {
  ModelParams p;
  p.e1 = 0.0;
  p.e2 = gap;
  p.coupling = {family, g_sq, cutoff};
  return p;
}

struct ScenarioOutcome {
  double defect = 0.0;
  std::optional<double> e0;
  double weight = 0.0;
  double plateau = 0.0;
  double mean_spectral = 0.0;
  double mean_volterra = 0.0;
  double cross_deviation = 0.0;
  double richardson_ratio = 0.0;
  double short_spectral = 0.0;
  double short_volterra = 0.0;
  std::optional<double> e0_oracle;
};

AmplitudeSeries subsample(const AmplitudeSeries& fine, std::size_t stride,
                          const std::vector<double>& times) {
  AmplitudeSeries out;
  out.method = fine.method;
  for (std::size_t i = 0, k = 0; i < fine.times.size() && k < times.size(); i += stride, ++k) {
    out.times.push_back(times[k]);
    out.amplitude.push_back(fine.amplitude[i]);
    out.probability.push_back(fine.probability[i]);
  }
  return out;
}

double volterra_step_difference(const ModelParams& params, double horizon, double h) {
  IdeOptions coarse{horizon, h, std::nullopt};
  IdeOptions fine{horizon, 0.5 * h, std::nullopt};
  const AmplitudeSeries a = solve_ide(params, coarse);
  const AmplitudeSeries b = solve_ide(params, fine);
  double worst = 0.0;
  for (std::size_t n = 0; n < a.amplitude.size(); ++n) {
    worst = std::max(worst, std::abs(a.amplitude[n] - b.amplitude[2 * n]));
  }
  return worst;
}

ScenarioOutcome evaluate(const MatrixScenario& scenario, const fs::path& out_dir) {
  const ModelParams& params = scenario.params;
  const QuadratureConfig cfg{};
  ScenarioOutcome r;

  const SpectralData spec = build_spectral_data(params, {}, cfg);
  r.defect = spec.normalization_defect;
  r.weight = spec.weight;
  r.plateau = asymptotic_limit(spec);
  if (spec.eigenvalue) r.e0 = spec.eigenvalue->value;

  // Long series on [0, 2T] with T = 200 / (E2 - E1).
  const double gap = params.level_gap();
  const double window = 200.0 / gap;
  const int samples = static_cast<int>(std::llround(2.0 * window / kSampleStep));
  const std::vector<double> times = uniform_times(2.0 * window, samples);
  const AmplitudeSeries spectral = amplitude_spectral(spec, times);
  const AmplitudeSeries fine = solve_ide(params, {2.0 * window, kVolterraStep, std::nullopt}, cfg);
  const auto stride = static_cast<std::size_t>(
      std::llround(static_cast<double>(fine.times.size() - 1) / samples));
  const AmplitudeSeries volterra = subsample(fine, stride, times);

  r.mean_spectral = window_mean(spectral, window, 2.0 * window);
  r.mean_volterra = window_mean(volterra, window, 2.0 * window);
  r.cross_deviation = max_amplitude_deviation(spectral, volterra, 50.0 / gap);

  const double cross_horizon = 50.0 / gap;
  const double d1 = volterra_step_difference(params, cross_horizon, 2.0 * kVolterraStep);
  const double d2 = volterra_step_difference(params, cross_horizon, kVolterraStep);
  r.richardson_ratio = d1 / d2;

  const double l2 = l2_norm_sq(params.coupling);
  const double t_short = 1e-2 / std::sqrt(l2);
  const double predicted = 1.0 - l2 * t_short * t_short;
  r.short_spectral = std::abs(std::norm(amplitude_at(spec, t_short)) - predicted);
  const AmplitudeSeries early = solve_ide(params, {t_short, t_short / 16.0, std::nullopt}, cfg);
  r.short_volterra = std::abs(early.probability.back() - predicted);

  if (scenario.above_threshold) r.e0_oracle = oracle::eigenvalue_by_bisection(params);

  write_text_file(out_dir / (scenario.name + "_density.csv"), density_csv(spec));
  write_text_file(out_dir / (scenario.name + "_spectrum.json"), spectral_summary(spec).dump());
  write_text_file(out_dir / (scenario.name + "_spectral.csv"), amplitude_csv(spectral));
  write_text_file(out_dir / (scenario.name + "_volterra.csv"), amplitude_csv(volterra));
  return r;
}

template <class Pred>
std::string failing_names(const std::vector<MatrixScenario>& matrix,
                          const std::vector<ScenarioOutcome>& outcomes, Pred&& failed) {
  std::string names;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (failed(matrix[i], outcomes[i])) names += (names.empty() ? "" : ",") + matrix[i].name;
  }
  return names;
}

CriterionResult make(int id, std::string name, const std::string& failures,
                     std::string detail) {
  CriterionResult c{id, std::move(name), failures.empty(), std::move(detail)};
  if (!failures.empty()) c.detail += "; failing: " + failures;
  return c;
}

CriterionResult threshold_criterion() {
  const QuadratureConfig cfg{};
  std::string failures;
  int checked = 0;
  const double combos[][2] = {{1.0, 1.0}, {0.5, 2.0}, {2.0, 0.5}};
  for (const auto& [gap, cutoff] : combos) {
    for (double factor : {0.9, 1.1}) {
      const ModelParams p =
          model(CouplingFamily::ThreeDimExp, factor * gap / cutoff, cutoff, gap);
      const bool expected = p.coupling.strength_sq * cutoff > gap;
      bool found = false;
      try {
        find_eigenvalue(p, cfg);
        found = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEigenvalue) throw;
      }
      const ThresholdReport report = threshold_check(p);
      ++checked;
      if (found != expected || report.exists != expected || report.marginal) {
        failures += (failures.empty() ? "" : ",") + std::string("3d g_sq=") +
                    sci(p.coupling.strength_sq);
      }
    }
  }
  for (double g_sq : {1e-3, 1e-1, 1.0}) {
    const ModelParams p = model(CouplingFamily::TwoDimExp, g_sq);
    bool ok = false;
    try {
      const Eigenvalue e = find_eigenvalue(p, cfg);
      ok = std::isfinite(e.log_gap) && e.value <= p.e1;
    } catch (const Error&) {
    }
    ++checked;
    if (!ok) failures += (failures.empty() ? "" : ",") + std::string("2d g_sq=") + sci(g_sq);
  }
  return make(2, "threshold", failures, std::to_string(checked) + " cases checked");
}

CriterionResult weak_coupling_criterion() {
  const ModelParams p = model(CouplingFamily::ThreeDimExp, 0.01);
  const QuadratureConfig cfg{};
  const SpectralData spec = build_spectral_data(p, {}, cfg);
  const int samples = static_cast<int>(std::llround(150.0 / kSampleStep));
  const AmplitudeSeries series = amplitude_spectral(spec, uniform_times(150.0, samples));
  const LogFit fit = fit_log_probability(series, 0.1, 0.9);
  const double gamma = weak_coupling_rate(p, cfg).gamma;
  const double rel = std::abs(-fit.slope - gamma) / gamma;
  return make(7, "weak_coupling_rate", rel <= kRateTol ? "" : "3d g_sq=1e-2",
              "slope " + sci(fit.slope) + " vs -gamma " + sci(-gamma) + ", relative error " +
                  sci(rel) + " (limit " + sci(kRateTol) + ")");
}

bool strictly_decreasing_e0(CouplingFamily family, const std::vector<double>& grid) {
  const QuadratureConfig cfg{};
  double previous = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e0 = find_eigenvalue(model(family, grid[i]), cfg).value;
    if (i > 0 && !(e0 < previous)) return false;
    previous = e0;
  }
  return true;
}

}  // namespace

std::string format_criterion(const CriterionResult& result) {
  return "criterion " + std::to_string(result.id) + " " + result.name + ": " +
         (result.passed ? "PASS " : "FAIL ") + result.detail;
}

bool VerificationReport::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

std::string VerificationReport::text() const {
  std::string out;
  for (const CriterionResult& c : criteria) out += format_criterion(c) + "\n";
  out += all_passed() ? "all criteria passed\n" : "some criteria failed\n";
  return out;
}

std::vector<MatrixScenario> acceptance_matrix() {
  return {
      {"2d_moderate", model(CouplingFamily::TwoDimExp, 0.5), true},
      {"2d_small", model(CouplingFamily::TwoDimExp, 0.1), true},
      {"3d_above_moderate", model(CouplingFamily::ThreeDimExp, 2.0), true},
      {"3d_above_small", model(CouplingFamily::ThreeDimExp, 1.5), true},
      {"3d_below_moderate", model(CouplingFamily::ThreeDimExp, 0.5), false},
      {"3d_below_small", model(CouplingFamily::ThreeDimExp, 0.1), false},
  };
}

VerificationReport run_verification(const fs::path& out_dir, unsigned jobs) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Config, "cannot create '" + out_dir.string() + "'");

  const std::vector<MatrixScenario> matrix = acceptance_matrix();
  const auto outcomes = ordered_parallel_map<ScenarioOutcome>(
      matrix.size(), jobs, [&](std::size_t i) { return evaluate(matrix[i], out_dir); });

  VerificationReport report;
  auto worst = [&](auto field) {
    double w = 0.0;
    for (const ScenarioOutcome& o : outcomes) w = std::max(w, field(o));
    return w;
  };

  report.criteria.push_back(make(
      1, "normalization",
      failing_names(matrix, outcomes,
                    [](auto&, const ScenarioOutcome& o) {
                      return !(o.defect <= kNormalizationTol);
                    }),
      "max defect " + sci(worst([](const ScenarioOutcome& o) { return o.defect; })) +
          " (limit " + sci(kNormalizationTol) + ")"));

  report.criteria.push_back(threshold_criterion());

  double plateau_gap = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (!matrix[i].above_threshold) continue;
    const ScenarioOutcome& o = outcomes[i];
    plateau_gap = std::max({plateau_gap, std::abs(o.mean_spectral - o.plateau),
                            std::abs(o.mean_volterra - o.plateau)});
  }
  report.criteria.push_back(make(
      3, "plateau_above_threshold",
      failing_names(matrix, outcomes,
                    [](const MatrixScenario& s, const ScenarioOutcome& o) {
                      return s.above_threshold &&
                             !(std::abs(o.mean_spectral - o.plateau) <= kPlateauTol &&
                               std::abs(o.mean_volterra - o.plateau) <= kPlateauTol);
                    }),
      "max |window mean - w^2| " + sci(plateau_gap) + " (limit " + sci(kPlateauTol) + ")"));

  double decayed = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].above_threshold) continue;
    decayed = std::max({decayed, outcomes[i].mean_spectral, outcomes[i].mean_volterra});
  }
  report.criteria.push_back(make(
      4, "decay_below_threshold",
      failing_names(matrix, outcomes,
                    [](const MatrixScenario& s, const ScenarioOutcome& o) {
                      return !s.above_threshold &&
                             !(o.mean_spectral < kDecayedTol && o.mean_volterra < kDecayedTol);
                    }),
      "max window mean " + sci(decayed) + " (limit " + sci(kDecayedTol) + ")"));

  double ratio_lo = 1e300;
  double ratio_hi = 0.0;
  for (const ScenarioOutcome& o : outcomes) {
    ratio_lo = std::min(ratio_lo, o.richardson_ratio);
    ratio_hi = std::max(ratio_hi, o.richardson_ratio);
  }
  report.criteria.push_back(make(
      5, "cross_method",
      failing_names(matrix, outcomes,
                    [](auto&, const ScenarioOutcome& o) {
                      return !(o.cross_deviation <= kCrossTol) ||
                             !(o.richardson_ratio >= 3.0 && o.richardson_ratio <= 5.0);
                    }),
      "max |C_spectral - C_volterra| " +
          sci(worst([](const ScenarioOutcome& o) { return o.cross_deviation; })) +
          " (limit " + sci(kCrossTol) + "), step-halving ratios in [" + sci(ratio_lo) + ", " +
          sci(ratio_hi) + "] (required [3, 5])"));

  report.criteria.push_back(make(
      6, "short_time",
      failing_names(matrix, outcomes,
                    [](auto&, const ScenarioOutcome& o) {
                      return !(o.short_spectral <= kShortTimeTol &&
                               o.short_volterra <= kShortTimeTol);
                    }),
      "max |P - (1 - l2 t^2)| spectral " +
          sci(worst([](const ScenarioOutcome& o) { return o.short_spectral; })) +
          ", volterra " +
          sci(worst([](const ScenarioOutcome& o) { return o.short_volterra; })) +
          " (limit " + sci(kShortTimeTol) + ")"));

  report.criteria.push_back(weak_coupling_criterion());

  double oracle_gap = 0.0;
  for (const ScenarioOutcome& o : outcomes) {
    if (o.e0 && o.e0_oracle) oracle_gap = std::max(oracle_gap, std::abs(*o.e0 - *o.e0_oracle));
  }
  std::string failures = failing_names(
      matrix, outcomes, [](const MatrixScenario& s, const ScenarioOutcome& o) {
        if (!s.above_threshold) return o.e0.has_value();
        return !o.e0 || !o.e0_oracle || !(std::abs(*o.e0 - *o.e0_oracle) <= kOracleTol) ||
               !(*o.e0 < s.params.e1);
      });
  const bool mono2 =
      strictly_decreasing_e0(CouplingFamily::TwoDimExp, {0.2, 0.35, 0.5, 0.75, 1.0});
  const bool mono3 =
      strictly_decreasing_e0(CouplingFamily::ThreeDimExp, {1.5, 2.0, 3.0, 4.0, 6.0});
  if (!mono2) failures += (failures.empty() ? "" : ",") + std::string("2d monotonicity");
  if (!mono3) failures += (failures.empty() ? "" : ",") + std::string("3d monotonicity");
  report.criteria.push_back(make(8, "eigenvalue", failures,
                                 "max |E0 - bisection| " + sci(oracle_gap) + " (limit " +
                                     sci(kOracleTol) + "), monotonicity checked on two 5-point g_sq grids"));

  write_text_file(out_dir / "verify_report.txt", report.text());
  return report;
}

namespace {

std::map<std::string, std::string> read_all(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[entry.path().filename().string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

}  // namespace

CriterionResult compare_runs(const fs::path& first, const fs::path& second) {
  const auto a = read_all(first);
  const auto b = read_all(second);
  std::string failures;
  for (const auto& [name, bytes] : a) {
    const auto it = b.find(name);
    if (it == b.end() || it->second != bytes) failures += (failures.empty() ? "" : ",") + name;
  }
  for (const auto& [name, bytes] : b) {
    if (!a.contains(name)) failures += (failures.empty() ? "" : ",") + name;
  }
  return make(9, "determinism", failures,
              std::to_string(a.size()) + " files compared byte for byte");
}

}  // namespace spdecay::tools
