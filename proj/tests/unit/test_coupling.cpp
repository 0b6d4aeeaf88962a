#include <gtest/gtest.h>

#include <cmath>

#include "spdecay/coupling.hpp"
#include "spdecay/error.hpp"
#include "spdecay/quadrature.hpp"

using namespace spdecay;

namespace {

CouplingModel make(CouplingFamily f, double g_sq, double cutoff) { return {f, g_sq, cutoff}; }

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-12;
  return cfg;
}

}  // namespace

TEST(Coupling, PointValues) {
  EXPECT_NEAR(coupling_sq(make(CouplingFamily::TwoDimExp, 1.0, 1.0), 1.0), std::exp(-1.0),
              1e-15);
  EXPECT_NEAR(coupling_sq(make(CouplingFamily::ThreeDimExp, 1.0, 1.0), 2.0),
              2.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(2.0 * std::exp(-2.0), 0.270670566473225, 1e-14);
  EXPECT_EQ(coupling_sq(make(CouplingFamily::ThreeDimExp, 1.0, 1.0), 0.0), 0.0);
}

TEST(Coupling, ClosedFormsMatchQuadrature) {
  const QuadratureConfig cfg = tight();
  for (auto family : {CouplingFamily::TwoDimExp, CouplingFamily::ThreeDimExp}) {
    for (double cutoff : {0.5, 1.0, 2.0}) {
      const CouplingModel m = make(family, 1.3, cutoff);
      auto f = [&](double x) { return coupling_sq(m, x); };
      EXPECT_NEAR(l2_norm_sq(m), integrate_semiinf(f, cfg).value, 1e-10);
      EXPECT_NEAR(tail_mass(m, 3.0), integrate_semiinf(f, cfg, 3.0).value, 1e-10);
      if (family == CouplingFamily::ThreeDimExp) {
        auto over_x = [&](double x) { return x > 0 ? coupling_sq(m, x) / x : 1.3; };
        EXPECT_NEAR(sq_over_x_integral(m), integrate_semiinf(over_x, cfg).value, 1e-10);
      }
    }
  }
}

TEST(Coupling, NormExamples) {
  EXPECT_DOUBLE_EQ(l2_norm_sq(make(CouplingFamily::TwoDimExp, 1.0, 2.0)), 2.0);
  EXPECT_DOUBLE_EQ(l2_norm_sq(make(CouplingFamily::ThreeDimExp, 1.0, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(sq_over_x_integral(make(CouplingFamily::ThreeDimExp, 2.0, 1.0)), 2.0);
  EXPECT_TRUE(std::isinf(sq_over_x_integral(make(CouplingFamily::TwoDimExp, 1.0, 1.0))));
}

TEST(Coupling, EdgeExpansionMatchesSmallArgument) {
  for (auto family : {CouplingFamily::TwoDimExp, CouplingFamily::ThreeDimExp}) {
    const CouplingModel m = make(family, 0.7, 1.5);
    const EdgeExpansion e = edge_expansion(m);
    const double x = 1e-8;
    EXPECT_NEAR(coupling_sq(m, x), e.value + e.slope * x, 1e-15);
  }
}

TEST(Coupling, RejectsInvalidParameters) {
  EXPECT_THROW(validate(make(CouplingFamily::TwoDimExp, -1.0, 1.0)), Error);
  EXPECT_THROW(validate(make(CouplingFamily::TwoDimExp, 1.0, 0.0)), Error);
  EXPECT_THROW(validate(make(CouplingFamily::ThreeDimExp, NAN, 1.0)), Error);
  EXPECT_NO_THROW(validate(make(CouplingFamily::ThreeDimExp, 0.0, 1.0)));
}

TEST(Coupling, FamilyNamesRoundTrip) {
  for (auto family : {CouplingFamily::TwoDimExp, CouplingFamily::ThreeDimExp}) {
    EXPECT_EQ(parse_family(family_name(family)), family);
  }
  EXPECT_FALSE(parse_family("4d-exp").has_value());
}
