#include "spdecay/evolution.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "spdecay/error.hpp"
#include "spdecay/legendre.hpp"

namespace spdecay {

namespace {

using cplx = std::complex<double>;

// (-i)^k
constexpr std::array<cplx, 4> kMinusIPowers = {cplx{1.0, 0.0}, cplx{0.0, -1.0},
                                               cplx{-1.0, 0.0}, cplx{0.0, 1.0}};

cplx continuum_part(const SpectralData& spec, double t) {
  std::array<double, kPanelOrder> bessel{};
  cplx sum{0.0, 0.0};
  for (const DensityPanel& panel : spec.panels) {
    const double mid = 0.5 * (panel.lo + panel.hi);
    const double half = 0.5 * (panel.hi - panel.lo);
    spherical_bessel_sequence(t * half, bessel);
    cplx moments{0.0, 0.0};
    for (int k = 0; k < kPanelOrder; ++k) {
      moments += kMinusIPowers[k % 4] * (panel.coefficients[k] * bessel[k]);
    }
    sum += std::polar(2.0 * half, -mid * t) * moments;
  }
  return std::polar(1.0, -spec.params.e1 * t) * sum;
}

}  // namespace

std::complex<double> amplitude_at(const SpectralData& spec, double t,
                                  const EvolutionConfig& cfg) {
  if (!(std::abs(t) <= cfg.max_time)) {
    throw Error(ErrorCode::OscillatoryBudgetExceeded,
                "t = " + std::to_string(t) + " is beyond the oscillatory horizon");
  }
  if (spec.decoupled) return std::polar(spec.weight, -spec.params.e2 * t);
  cplx c = continuum_part(spec, t);
  if (spec.eigenvalue) c += std::polar(spec.weight, -spec.eigenvalue->value * t);
  return c;
}

AmplitudeSeries amplitude_spectral(const SpectralData& spec, std::span<const double> times,
                                   const EvolutionConfig& cfg) {
  AmplitudeSeries series;
  series.method = EvolutionMethod::Spectral;
  series.times.assign(times.begin(), times.end());
  series.amplitude.reserve(times.size());
  series.probability.reserve(times.size());
  for (double t : times) {
    const cplx c = amplitude_at(spec, t, cfg);
    series.amplitude.push_back(c);
    series.probability.push_back(std::norm(c));
  }
  return series;
}

double asymptotic_limit(const SpectralData& spec) {
  if (spec.decoupled || spec.eigenvalue) return spec.weight * spec.weight;
  return 0.0;
}

WeakCouplingRate weak_coupling_rate(const ModelParams& params, const QuadratureConfig& cfg) {
  validate(params);
  WeakCouplingRate rate;
  rate.gamma = 2.0 * std::numbers::pi * coupling_sq(params.coupling, params.level_gap());
  rate.shift_estimate = -k_pv(params, params.e2, cfg);
  return rate;
}

bool conjugate_symmetry_check(const SpectralData& spec, double t, double tolerance,
                              const EvolutionConfig& cfg) {
  const cplx forward = amplitude_at(spec, t, cfg);
  const cplx backward = amplitude_at(spec, -t, cfg);
  return std::abs(backward - std::conj(forward)) <= tolerance;
}

std::vector<double> uniform_times(double horizon, int count) {
  if (!(horizon > 0.0) || count < 1) {
    throw Error(ErrorCode::InvalidArgument, "time grid needs horizon > 0 and count >= 1");
  }
  std::vector<double> times(count + 1);
  for (int k = 0; k <= count; ++k) times[k] = horizon * k / count;
  return times;
}

double window_mean(const AmplitudeSeries& series, double t_begin, double t_end) {
  double area = 0.0;
  double span = 0.0;
  for (std::size_t i = 1; i < series.times.size(); ++i) {
    const double a = series.times[i - 1];
    const double b = series.times[i];
    if (a < t_begin || b > t_end) continue;
    area += 0.5 * (b - a) * (series.probability[i - 1] + series.probability[i]);
    span += b - a;
  }
  if (!(span > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "averaging window contains no samples");
  }
  return area / span;
}

LogFit fit_log_probability(const AmplitudeSeries& series, double p_low, double p_high) {
  double n = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double p = series.probability[i];
    if (!(p > p_low && p < p_high)) continue;
    const double x = series.times[i];
    const double y = std::log(p);
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n < 2.0) {
    throw Error(ErrorCode::InvalidArgument, "fewer than two samples in the fit window");
  }
  LogFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.samples = static_cast<int>(n);
  return fit;
}

double max_amplitude_deviation(const AmplitudeSeries& a, const AmplitudeSeries& b,
                               double t_end) {
  double worst = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const double t = a.times[i];
    if (t > t_end) break;
    const double slack = 1e-9 * std::max(1.0, std::abs(t));
    while (j < b.times.size() && b.times[j] < t - slack) ++j;
    if (j == b.times.size()) break;
    if (std::abs(b.times[j] - t) > slack) continue;
    worst = std::max(worst, std::abs(a.amplitude[i] - b.amplitude[j]));
  }
  return worst;
}

}  // namespace spdecay
