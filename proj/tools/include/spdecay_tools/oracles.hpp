#pragma once

#include <functional>

#include "spdecay/model.hpp"

// Brute-force reference computations. They use fixed-grid composite rules
// with change of variables and plain bisection, and share no code with the
// adaptive quadrature, principal-value or root-finding paths of the library.
namespace spdecay::oracle {

/// Composite Simpson rule with `intervals` (rounded up to even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b, long intervals);

/// k at distance gap = E1 - lambda >= 0 below the edge, via x = gap (e^s - 1).
double k_below_edge(const ModelParams& params, double gap, long intervals = 200000);

/// Principal value of the integral of f(x) / (x - c) over [0, upper] as a
/// midpoint Riemann sum on a grid symmetric about c with spacing `spacing`,
/// plus Simpson on the part of [0, upper] not covered symmetrically.
double principal_value(const std::function<double(double)>& f, double c, double upper,
                       double spacing = 1e-5);

/// rho(t) with the principal value taken by the symmetric Riemann sum.
double spectral_density(const ModelParams& params, double t);

/// Eigenvalue by bisection on lambda with the brute-force k; the bracket is
/// halved until it is narrower than 1e-13 (E2 - E1).
double eigenvalue_by_bisection(const ModelParams& params, long intervals = 200000);

/// 1 / (1 + integral of |V|^2 / (x + gap)^2), via x = gap (e^s - 1).
double eigen_weight(const ModelParams& params, double gap, long intervals = 200000);

}  // namespace spdecay::oracle
