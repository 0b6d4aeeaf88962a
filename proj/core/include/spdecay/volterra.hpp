#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "spdecay/evolution.hpp"
#include "spdecay/quadrature.hpp"

namespace spdecay {

/// Memory kernel K(t) = -exp(i (E2 - E1) t) * integral of |V(x)|^2 exp(-i x t)
/// in closed form:
///   2d-exp: -exp(i (E2-E1) t) g^2 L / (1 + i L t)
///   3d-exp: -exp(i (E2-E1) t) g^2 L^2 / (1 + i L t)^2
std::complex<double> kernel(const ModelParams& params, double t);

/// The same kernel from adaptive quadrature of its defining integral.
std::complex<double> kernel_by_quadrature(const ModelParams& params, double t,
                                          const QuadratureConfig& cfg);

/// Compares kernel() with kernel_by_quadrature() at ten sample times and
/// throws KernelMismatch on any difference above 1e-8.
void verify_kernel(const ModelParams& params, const QuadratureConfig& cfg);

struct KernelTable {
  double step = 0.0;
  std::vector<std::complex<double>> values;  // K(k * step), k = 0..n
  bool closed_form = true;
};

KernelTable tabulate_kernel(const ModelParams& params, double step, int count);

struct IdeOptions {
  double horizon = 0.0;
  double step = 0.0;  // <= 0: min(0.01 / L, 0.01 / (E2 - E1))
  // When set, the solve is repeated at half the step and StepTooLarge is
  // thrown if any |y| sample moves by more than 10 * target_tolerance.
  std::optional<double> target_tolerance;
};

double default_ide_step(const ModelParams& params);

/// Solves dy/dt = integral_0^t K(t - s) y(s) ds, y(0) = 1, and returns
/// C(t) = y(t) exp(-i E2 t) on the grid k h, k = 0..N, N = ceil(T / h)
/// (h shrinks slightly so that N h = T).
///
/// The history integral uses the trapezoidal rule and y advances with the
/// trapezoidal rule, giving second-order accuracy. The new value enters the
/// history sum linearly, so the implicit step is solved exactly. Cost is
/// O(N^2) time and O(N) memory; the full history is kept.
AmplitudeSeries solve_ide(const ModelParams& params, const IdeOptions& options,
                          const QuadratureConfig& cfg = {});

/// Raw y(t) samples of the same scheme, without the kernel self-check.
std::vector<std::complex<double>> integrate_memory_equation(const KernelTable& kernel);

}  // namespace spdecay
