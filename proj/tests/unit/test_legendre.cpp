#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "spdecay/legendre.hpp"

using namespace spdecay;

TEST(Legendre, RuleIntegratesPolynomialsExactly) {
  const GaussLegendreRule& rule = panel_rule();
  EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 2.0, 1e-14);
  for (int degree = 0; degree < 2 * kPanelOrder; degree += 3) {
    double sum = 0.0;
    for (int i = 0; i < kPanelOrder; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
    const double exact = degree % 2 == 1 ? 0.0 : 2.0 / (degree + 1);
    EXPECT_NEAR(sum, exact, 1e-13) << degree;
  }
}

TEST(Legendre, CoefficientsReproduceSamples) {
  const GaussLegendreRule& rule = panel_rule();
  PanelArray values{};
  for (int i = 0; i < kPanelOrder; ++i) values[i] = std::exp(rule.nodes[i]) / (2.0 + rule.nodes[i]);
  const PanelArray c = legendre_coefficients(values);
  for (int i = 0; i < kPanelOrder; ++i) {
    EXPECT_NEAR(legendre_series(c, rule.nodes[i]), values[i], 1e-14);
  }
  for (double x : {-0.95, -0.3, 0.1, 0.77}) {
    // Pole at -2 limits the degree-15 interpolant to about 1e-9.
    EXPECT_NEAR(legendre_series(c, x), std::exp(x) / (2.0 + x), 1e-9);
  }
}

TEST(Legendre, LowDegreeCoefficients) {
  const GaussLegendreRule& rule = panel_rule();
  PanelArray values{};
  for (int i = 0; i < kPanelOrder; ++i) values[i] = 3.0 - 2.0 * rule.nodes[i];
  const PanelArray c = legendre_coefficients(values);
  EXPECT_NEAR(c[0], 3.0, 1e-14);
  EXPECT_NEAR(c[1], -2.0, 1e-14);
  for (int k = 2; k < kPanelOrder; ++k) EXPECT_NEAR(c[k], 0.0, 1e-14);
}

TEST(SphericalBessel, MatchesStandardLibrary) {
  std::vector<double> out(kPanelOrder);
  for (double x : {1e-6, 0.01, 0.3, 0.49, 0.51, 1.0, 3.7, 10.0, 15.9, 16.0, 40.0}) {
    spherical_bessel_sequence(x, out);
    for (int n = 0; n < kPanelOrder; ++n) {
      const double expected = std::sph_bessel(n, x);
      EXPECT_NEAR(out[n], expected, 1e-14 + 1e-11 * std::abs(expected)) << "n=" << n << " x=" << x;
    }
  }
}

TEST(SphericalBessel, LargeArgumentClosedForms) {
  std::vector<double> out(kPanelOrder);
  const double x = 1234.5;
  spherical_bessel_sequence(x, out);
  EXPECT_NEAR(out[0], std::sin(x) / x, 1e-18);
  EXPECT_NEAR(out[1], std::sin(x) / (x * x) - std::cos(x) / x, 1e-18);
}

TEST(SphericalBessel, Parity) {
  std::vector<double> pos(kPanelOrder);
  std::vector<double> neg(kPanelOrder);
  spherical_bessel_sequence(2.5, pos);
  spherical_bessel_sequence(-2.5, neg);
  for (int n = 0; n < kPanelOrder; ++n) EXPECT_DOUBLE_EQ(neg[n], n % 2 ? -pos[n] : pos[n]);
}
