#pragma once

#include <complex>
#include <span>
#include <vector>

#include "spdecay/spectrum.hpp"

namespace spdecay {

enum class EvolutionMethod { Spectral, Volterra };

/// C(t) sampled on an increasing time grid, with P(t) = |C(t)|^2.
struct AmplitudeSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> amplitude;
  std::vector<double> probability;
  EvolutionMethod method = EvolutionMethod::Spectral;
};

struct EvolutionConfig {
  // Largest |t| the oscillatory quadrature will be asked for.
  double max_time = 1e6;
};

/// Survival amplitude from the spectral measure:
///   C(t) = w exp(-i E0 t) + integral over [E1, inf) of exp(-i lambda t) rho(lambda).
/// On every density panel the Legendre expansion of rho is integrated against
/// the exponential exactly, using
///   integral_{-1}^{1} P_k(x) exp(-i w x) dx = 2 (-i)^k j_k(w),
/// so the phase is resolved at any t without subdividing panels.
/// Throws OscillatoryBudgetExceeded for |t| > cfg.max_time.
std::complex<double> amplitude_at(const SpectralData& spec, double t,
                                  const EvolutionConfig& cfg = {});

AmplitudeSeries amplitude_spectral(const SpectralData& spec, std::span<const double> times,
                                   const EvolutionConfig& cfg = {});

/// lim P(t): w^2 when an eigenvalue exists (1 for zero coupling), else 0.
double asymptotic_limit(const SpectralData& spec);

struct WeakCouplingRate {
  double gamma = 0.0;           // 2 pi |V(E2 - E1)|^2
  double shift_estimate = 0.0;  // -PV k(E2)
};

/// Golden-rule width and level shift; diagnostic only.
WeakCouplingRate weak_coupling_rate(const ModelParams& params, const QuadratureConfig& cfg);

/// |C(-t) - conj(C(t))| <= tolerance.
bool conjugate_symmetry_check(const SpectralData& spec, double t, double tolerance = 1e-8,
                              const EvolutionConfig& cfg = {});

/// count + 1 equally spaced samples on [0, horizon].
std::vector<double> uniform_times(double horizon, int count);

/// Trapezoidal time average of P over the samples inside [t_begin, t_end].
double window_mean(const AmplitudeSeries& series, double t_begin, double t_end);

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  int samples = 0;
};

/// Least-squares line through ln P(t) over samples with p_low < P < p_high.
LogFit fit_log_probability(const AmplitudeSeries& series, double p_low, double p_high);

/// Largest |C_a(t) - C_b(t)| over the common times t <= t_end. The series must
/// share sample times up to rounding.
double max_amplitude_deviation(const AmplitudeSeries& a, const AmplitudeSeries& b,
                               double t_end);

}  // namespace spdecay
