#include "spdecay/legendre.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace spdecay {

namespace {

GaussLegendreRule build_rule() {
  constexpr int n = kPanelOrder;
  GaussLegendreRule rule{};
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// projection[k][j] = (2k+1)/2 * w_j * P_k(x_j)
std::array<PanelArray, kPanelOrder> build_projection() {
  const GaussLegendreRule& rule = panel_rule();
  std::array<PanelArray, kPanelOrder> proj{};
  for (int j = 0; j < kPanelOrder; ++j) {
    const double x = rule.nodes[j];
    double p0 = 1.0;
    double p1 = x;
    for (int k = 0; k < kPanelOrder; ++k) {
      double pk;
      if (k == 0) {
        pk = 1.0;
      } else if (k == 1) {
        pk = x;
      } else {
        pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      proj[k][j] = 0.5 * (2.0 * k + 1.0) * rule.weights[j] * pk;
    }
  }
  return proj;
}

}  // namespace

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

PanelArray legendre_coefficients(const PanelArray& values) {
  static const auto projection = build_projection();
  PanelArray coeffs{};
  for (int k = 0; k < kPanelOrder; ++k) {
    double s = 0.0;
    for (int j = 0; j < kPanelOrder; ++j) s += projection[k][j] * values[j];
    coeffs[k] = s;
  }
  return coeffs;
}

double legendre_series(std::span<const double> coefficients, double x) {
  // Clenshaw for P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1).
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 0; --k) {
    const double alpha = (2.0 * k + 1.0) / (k + 1.0) * x;
    const double beta = -(k + 1.0) / (k + 2.0);
    const double b0 = coefficients[k] + alpha * b1 + beta * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

void spherical_bessel_sequence(double x, std::span<double> out) {
  const int n = static_cast<int>(out.size());
  if (n == 0) return;
  const double ax = std::abs(x);

  if (ax == 0.0) {
    out[0] = 1.0;
    for (int k = 1; k < n; ++k) out[k] = 0.0;
  } else if (ax < 0.5) {
    const double half_sq = -0.5 * ax * ax;
    double lead = 1.0;  // ax^k / (2k+1)!!
    for (int k = 0; k < n; ++k) {
      if (k > 0) lead *= ax / (2.0 * k + 1.0);
      double term = lead;
      double sum = lead;
      for (int m = 1; m < 40; ++m) {
        term *= half_sq / (m * (2.0 * k + 2.0 * m + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
      }
      out[k] = sum;
    }
  } else {
    const double s = std::sin(ax);
    const double c = std::cos(ax);
    const double j0 = s / ax;
    const double j1 = s / (ax * ax) - c / ax;
    if (ax >= n) {
      out[0] = j0;
      if (n > 1) out[1] = j1;
      for (int k = 1; k + 1 < n; ++k) {
        out[k + 1] = (2.0 * k + 1.0) / ax * out[k] - out[k - 1];
      }
    } else {
      const int top = n + 30 + static_cast<int>(ax);
      std::vector<double> f(top + 2, 0.0);
      f[top] = 1e-30;
      for (int k = top; k >= 1; --k) {
        f[k - 1] = (2.0 * k + 1.0) / ax * f[k] - f[k + 1];
        if (std::abs(f[k - 1]) > 1e200) {
          for (int i = k - 1; i <= top; ++i) f[i] *= 1e-200;
        }
      }
      const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
      for (int k = 0; k < n; ++k) out[k] = f[k] * scale;
    }
  }
  if (x < 0.0) {
    for (int k = 1; k < n; k += 2) out[k] = -out[k];
  }
}

}  // namespace spdecay
