#pragma once

#include <array>
#include <span>

namespace spdecay {

/// Number of Gauss-Legendre nodes per density panel; also the length of each
/// panel's Legendre expansion.
inline constexpr int kPanelOrder = 16;

using PanelArray = std::array<double, kPanelOrder>;

struct GaussLegendreRule {
  PanelArray nodes;    // ascending, on [-1, 1]
  PanelArray weights;
};

/// The kPanelOrder-point rule, computed once.
const GaussLegendreRule& panel_rule();

/// Legendre coefficients c_k of the degree kPanelOrder-1 interpolant through
/// values sampled at panel_rule().nodes.
PanelArray legendre_coefficients(const PanelArray& values);

/// Sum of c_k P_k(x) by Clenshaw recurrence.
double legendre_series(std::span<const double> coefficients, double x);

/// Spherical Bessel functions j_0(x) .. j_{n-1}(x), n = out.size().
/// Power series for small |x|, upward recurrence for |x| >= n, and Miller's
/// downward recurrence in between.
void spherical_bessel_sequence(double x, std::span<double> out);

}  // namespace spdecay
