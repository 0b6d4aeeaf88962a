#include "spdecay/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spdecay/error.hpp"

namespace spdecay {

using cplx = std::complex<double>;

cplx kernel(const ModelParams& params, double t) {
  const CouplingModel& model = params.coupling;
  const cplx phase = std::polar(1.0, params.level_gap() * t);
  const cplx denom{1.0, model.cutoff * t};
  switch (model.family) {
    case CouplingFamily::TwoDimExp:
      return -phase * (model.strength_sq * model.cutoff) / denom;
    case CouplingFamily::ThreeDimExp:
      return -phase * (model.strength_sq * model.cutoff * model.cutoff) / (denom * denom);
  }
  return {};
}

cplx kernel_by_quadrature(const ModelParams& params, double t, const QuadratureConfig& cfg) {
  const CouplingModel& model = params.coupling;
  const Truncation trunc = truncate_tail(model, 0.0, cfg);
  const QuadResult re = integrate(
      [&](double x) { return coupling_sq(model, x) * std::cos(x * t); }, 0.0, trunc.point, cfg);
  const QuadResult im = integrate(
      [&](double x) { return -coupling_sq(model, x) * std::sin(x * t); }, 0.0, trunc.point, cfg);
  return -std::polar(1.0, params.level_gap() * t) * cplx{re.value, im.value};
}

void verify_kernel(const ModelParams& params, const QuadratureConfig& cfg) {
  QuadratureConfig tight = cfg;
  tight.abs_tol = std::min(cfg.abs_tol, 1e-11);
  tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
  const double scale = 1.0 / params.coupling.cutoff;
  for (int j = 0; j < 10; ++j) {
    const double t = 0.7 * j * scale;
    const double diff = std::abs(kernel(params, t) - kernel_by_quadrature(params, t, tight));
    if (diff > 1e-8) {
      throw Error(ErrorCode::KernelMismatch,
                  "closed-form kernel disagrees with quadrature at t = " + std::to_string(t) +
                      " by " + std::to_string(diff));
    }
  }
}

KernelTable tabulate_kernel(const ModelParams& params, double step, int count) {
  KernelTable table;
  table.step = step;
  table.values.resize(count + 1);
  for (int k = 0; k <= count; ++k) table.values[k] = kernel(params, k * step);
  return table;
}

double default_ide_step(const ModelParams& params) {
  return std::min(0.01 / params.coupling.cutoff, 0.01 / params.level_gap());
}

std::vector<cplx> integrate_memory_equation(const KernelTable& table) {
  const std::size_t n_steps = table.values.size() - 1;
  const double h = table.step;
  // Split storage keeps the O(N^2) history sum in plain real arithmetic.
  std::vector<double> k_re(n_steps + 1), k_im(n_steps + 1);
  for (std::size_t m = 0; m <= n_steps; ++m) {
    k_re[m] = table.values[m].real();
    k_im[m] = table.values[m].imag();
  }
  std::vector<double> y_re(n_steps + 1, 0.0), y_im(n_steps + 1, 0.0);
  y_re[0] = 1.0;

  const cplx k0 = table.values[0];
  const cplx denom = 1.0 - 0.25 * h * h * k0;
  cplx z_prev{0.0, 0.0};
  for (std::size_t n = 1; n <= n_steps; ++n) {
    double s_re = 0.5 * (k_re[n] * y_re[0] - k_im[n] * y_im[0]);
    double s_im = 0.5 * (k_re[n] * y_im[0] + k_im[n] * y_re[0]);
    for (std::size_t j = 1; j < n; ++j) {
      const double kr = k_re[n - j];
      const double ki = k_im[n - j];
      s_re += kr * y_re[j] - ki * y_im[j];
      s_im += kr * y_im[j] + ki * y_re[j];
    }
    const cplx history = h * cplx{s_re, s_im};
    const cplx y_prev{y_re[n - 1], y_im[n - 1]};
    const cplx y_new = (y_prev + 0.5 * h * (z_prev + history)) / denom;
    y_re[n] = y_new.real();
    y_im[n] = y_new.imag();
    z_prev = history + 0.5 * h * k0 * y_new;
  }

  std::vector<cplx> y(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) y[n] = {y_re[n], y_im[n]};
  return y;
}

AmplitudeSeries solve_ide(const ModelParams& params, const IdeOptions& options,
                          const QuadratureConfig& cfg) {
  validate(params);
  const double requested = options.step > 0.0 ? options.step : default_ide_step(params);
  if (!(options.horizon >= requested)) {
    throw Error(ErrorCode::InvalidArgument, "IDE horizon must be at least one step");
  }
  const auto n_steps = static_cast<int>(std::ceil(options.horizon / requested - 1e-9));
  const double h = options.horizon / n_steps;

  if (!is_decoupled(params.coupling)) verify_kernel(params, cfg);
  const std::vector<cplx> y = integrate_memory_equation(tabulate_kernel(params, h, n_steps));

  if (options.target_tolerance) {
    const std::vector<cplx> fine =
        integrate_memory_equation(tabulate_kernel(params, 0.5 * h, 2 * n_steps));
    double worst = 0.0;
    for (int n = 0; n <= n_steps; ++n) {
      worst = std::max(worst, std::abs(std::abs(y[n]) - std::abs(fine[2 * n])));
    }
    if (worst > 10.0 * *options.target_tolerance) {
      throw Error(ErrorCode::StepTooLarge,
                  "halving the step changed |y| by " + std::to_string(worst));
    }
  }

  AmplitudeSeries series;
  series.method = EvolutionMethod::Volterra;
  series.times.resize(n_steps + 1);
  series.amplitude.resize(n_steps + 1);
  series.probability.resize(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    const double t = n * h;
    series.times[n] = t;
    series.amplitude[n] = y[n] * std::polar(1.0, -params.e2 * t);
    series.probability[n] = std::norm(y[n]);
  }
  return series;
}

}  // namespace spdecay
