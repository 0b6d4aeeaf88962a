#include "spdecay_tools/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "spdecay/evolution.hpp"
#include "spdecay/spectrum.hpp"
#include "spdecay/volterra.hpp"
#include "spdecay_tools/output.hpp"
#include "spdecay_tools/verification.hpp"
#include "spdecay_tools/workers.hpp"

namespace spdecay::tools {

namespace fs = std::filesystem;

Scenario apply_overrides(Scenario scenario, const RunOptions& options) {
  if (options.out) scenario.output_dir = *options.out;
  if (options.abs_tol) scenario.quadrature.abs_tol = *options.abs_tol;
  if (options.horizon) scenario.horizon = *options.horizon;
  validate(scenario);
  return scenario;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
      return kExitConfig;
    default:
      return kExitNumerical;
  }
}

void report_error(std::ostream& diag, const Error& error) {
  std::string message = error.what();
  std::replace(message.begin(), message.end(), '\n', ' ');
  std::replace(message.begin(), message.end(), '"', '\'');
  diag << "spdecay: error=" << error_tag(error.code())
       << " exit=" << exit_code_for(error.code()) << " message=\"" << message << "\"\n";
}

namespace {

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Config, "cannot create output directory '" + dir.string() + "'");
}

template <class Body>
int guarded(std::ostream& diag, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    report_error(diag, e);
    return exit_code_for(e.code());
  }
}

double volterra_step_for(const Scenario& scenario, double sample_spacing) {
  const double requested =
      scenario.volterra_step ? *scenario.volterra_step : default_ide_step(scenario.params);
  // Align the Volterra grid with the output samples.
  const double stride = std::ceil(sample_spacing / requested - 1e-9);
  return sample_spacing / stride;
}

}  // namespace

int cmd_spectrum(const Scenario& scenario, std::ostream& diag) {
  return guarded(diag, [&] {
    validate(scenario);
    const SpectralData spec = build_spectral_data(scenario.params, {}, scenario.quadrature);
    prepare_output_dir(scenario.output_dir);
    write_text_file(scenario.output_dir / (scenario.name + "_density.csv"), density_csv(spec));
    write_text_file(scenario.output_dir / (scenario.name + "_spectrum.json"),
                    spectral_summary(spec).dump());
    return kExitOk;
  });
}

int cmd_decay(const Scenario& scenario, std::ostream& diag) {
  return guarded(diag, [&] {
    validate(scenario);
    const double horizon = scenario.effective_horizon();
    const SpectralData spec = build_spectral_data(scenario.params, {}, scenario.quadrature);
    const std::vector<double> times = uniform_times(horizon, scenario.points);
    const AmplitudeSeries spectral = amplitude_spectral(spec, times);

    IdeOptions ide;
    ide.horizon = horizon;
    ide.step = volterra_step_for(scenario, horizon / scenario.points);
    ide.target_tolerance = kVolterraTargetTolerance;
    const AmplitudeSeries fine = solve_ide(scenario.params, ide, scenario.quadrature);
    const auto stride = static_cast<std::size_t>(std::llround(
        static_cast<double>(fine.times.size() - 1) / scenario.points));
    AmplitudeSeries volterra;
    volterra.method = EvolutionMethod::Volterra;
    for (std::size_t i = 0; i < fine.times.size(); i += stride) {
      volterra.times.push_back(times[i / stride]);
      volterra.amplitude.push_back(fine.amplitude[i]);
      volterra.probability.push_back(fine.probability[i]);
    }

    const double deviation = max_amplitude_deviation(spectral, volterra, horizon);
    const WeakCouplingRate rate = weak_coupling_rate(scenario.params, scenario.quadrature);

    prepare_output_dir(scenario.output_dir);
    write_text_file(scenario.output_dir / (scenario.name + "_spectral.csv"),
                    amplitude_csv(spectral));
    write_text_file(scenario.output_dir / (scenario.name + "_volterra.csv"),
                    amplitude_csv(volterra));
    FlatJson summary;
    summary.set("p_infinity", asymptotic_limit(spec))
        .set("gamma_estimate", rate.gamma)
        .set("shift_estimate", rate.shift_estimate)
        .set("max_deviation_vs_volterra", deviation)
        .set("horizon", horizon)
        .set("volterra_step", ide.step)
        .set_number("e0", spec.eigenvalue ? std::optional(spec.eigenvalue->value) : std::nullopt)
        .set("weight", spec.weight);
    write_text_file(scenario.output_dir / (scenario.name + "_decay.json"), summary.dump());

    if (!(deviation <= kDecayDeviationLimit)) {
      diag << "spdecay: error=cross_method_deviation exit=" << kExitNumerical
           << " message=\"spectral and Volterra amplitudes differ by "
           << format_double(deviation) << "\"\n";
      return kExitNumerical;
    }
    return kExitOk;
  });
}

namespace {

struct SweepRow {
  double value = 0.0;
  double rhs = 0.0;
  std::string exists;
  std::optional<double> e0;
  double weight = 0.0;
  double p_infinity = 0.0;
};

SweepRow sweep_point(const Scenario& scenario, double value) {
  SweepRow row;
  row.value = value;
  const ModelParams params = with_sweep_value(scenario.params, scenario.sweep->parameter, value);
  const ThresholdReport threshold = threshold_check(params);
  row.rhs = threshold.rhs;
  if (threshold.marginal) {
    row.exists = "marginal";
    return row;
  }
  if (threshold.decoupled) {
    row.exists = "no";
    row.weight = 1.0;
    row.p_infinity = 1.0;
    return row;
  }
  std::optional<Eigenvalue> eigen;
  try {
    eigen = find_eigenvalue(params, scenario.quadrature);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoEigenvalue) throw;
  }
  if (eigen.has_value() != threshold.exists) {
    throw Error(ErrorCode::NoEigenvalue,
                "eigenvalue search disagrees with the threshold condition at sweep value " +
                    format_double(value));
  }
  row.exists = eigen ? "yes" : "no";
  if (eigen) {
    row.e0 = eigen->value;
    row.weight = eigen_weight(params, *eigen, scenario.quadrature);
    row.p_infinity = row.weight * row.weight;
  }
  return row;
}

}  // namespace

int cmd_threshold_sweep(const Scenario& scenario, unsigned jobs, std::ostream& diag) {
  return guarded(diag, [&] {
    validate(scenario);
    if (!scenario.sweep) throw Error(ErrorCode::Config, "scenario has no sweep section");
    const auto& values = scenario.sweep->values;
    const auto rows = ordered_parallel_map<SweepRow>(
        values.size(), jobs, [&](std::size_t i) { return sweep_point(scenario, values[i]); });

    std::string csv = "sweep_value,threshold_rhs,exists,e0,weight,p_infinity\n";
    for (const SweepRow& row : rows) {
      csv += format_double(row.value) + "," + format_double(row.rhs) + "," + row.exists + "," +
             (row.e0 ? format_double(*row.e0) : std::string{}) + "," +
             format_double(row.weight) + "," + format_double(row.p_infinity) + "\n";
      if (row.exists == "marginal") {
        diag << "spdecay: note=marginal_threshold sweep_value=" << format_double(row.value)
             << " skipped\n";
      }
    }
    prepare_output_dir(scenario.output_dir);
    write_text_file(scenario.output_dir / (scenario.name + "_sweep.csv"), csv);
    return kExitOk;
  });
}

int cmd_verify(const fs::path& out_dir, unsigned jobs, std::ostream& log, std::ostream& diag) {
  return guarded(diag, [&] {
    prepare_output_dir(out_dir);
    const VerificationReport report = run_verification(out_dir, jobs);
    for (const CriterionResult& c : report.criteria) log << format_criterion(c) << "\n";
    return report.all_passed() ? kExitOk : kExitNumerical;
  });
}

}  // namespace spdecay::tools
