#include <gtest/gtest.h>

#include <cmath>

#include "spdecay/error.hpp"
#include "spdecay/spectrum.hpp"
#include "spdecay_tools/oracles.hpp"

using namespace spdecay;

namespace {

ModelParams params(CouplingFamily f, double g_sq, double cutoff = 1.0, double e2 = 1.0) {
  ModelParams p;
  p.e1 = 0.0;
  p.e2 = e2;
  p.coupling = {f, g_sq, cutoff};
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Config;
}

}  // namespace

TEST(Threshold, ThreeDimensionalExamples) {
  EXPECT_TRUE(threshold_check(params(CouplingFamily::ThreeDimExp, 2.0)).exists);
  EXPECT_FALSE(threshold_check(params(CouplingFamily::ThreeDimExp, 0.5)).exists);
  const ThresholdReport r = threshold_check(params(CouplingFamily::ThreeDimExp, 1.5, 2.0));
  EXPECT_DOUBLE_EQ(r.rhs, 3.0);
  EXPECT_DOUBLE_EQ(r.lhs, 1.0);
}

TEST(Threshold, TwoDimensionalAlwaysBinds) {
  for (double g_sq : {1e-6, 1e-3, 1.0}) {
    const ThresholdReport r = threshold_check(params(CouplingFamily::TwoDimExp, g_sq));
    EXPECT_TRUE(r.exists);
    EXPECT_TRUE(std::isinf(r.rhs));
  }
}

TEST(Threshold, MarginalBandAndDecoupled) {
  EXPECT_TRUE(threshold_check(params(CouplingFamily::ThreeDimExp, 1.0 + 1e-10)).marginal);
  EXPECT_EQ(code_of([] {
              find_eigenvalue(params(CouplingFamily::ThreeDimExp, 1.0 + 1e-10), {});
            }),
            ErrorCode::MarginalThreshold);
  const ThresholdReport r = threshold_check(params(CouplingFamily::TwoDimExp, 0.0));
  EXPECT_TRUE(r.decoupled);
  EXPECT_FALSE(r.exists);
}

TEST(Eigenvalue, NoneBelowThreshold) {
  EXPECT_EQ(code_of([] { find_eigenvalue(params(CouplingFamily::ThreeDimExp, 0.5), {}); }),
            ErrorCode::NoEigenvalue);
}

TEST(Eigenvalue, MatchesBisectionOracle) {
  const QuadratureConfig cfg;
  for (const ModelParams& p :
       {params(CouplingFamily::TwoDimExp, 0.5), params(CouplingFamily::TwoDimExp, 0.1),
        params(CouplingFamily::ThreeDimExp, 2.0), params(CouplingFamily::ThreeDimExp, 1.5),
        params(CouplingFamily::ThreeDimExp, 3.0, 0.5, 1.2)}) {
    const Eigenvalue e = find_eigenvalue(p, cfg);
    EXPECT_NEAR(e.value, oracle::eigenvalue_by_bisection(p), 1e-8);
    EXPECT_LT(e.value, p.e1);
    EXPECT_LT(std::abs(e.residual), 1e-9);
    EXPECT_NEAR(std::exp(e.log_gap), p.e1 - e.value, 1e-15);
  }
}

TEST(Eigenvalue, IndependentOfInitialBracket) {
  const QuadratureConfig cfg;
  const ModelParams p = params(CouplingFamily::ThreeDimExp, 2.0);
  const double a = find_eigenvalue(p, cfg, {1e-6}).value;
  const double b = find_eigenvalue(p, cfg, {50.0}).value;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(Eigenvalue, WeakTwoDimensionalCouplingNearEdge) {
  const QuadratureConfig cfg;
  const Eigenvalue weak = find_eigenvalue(params(CouplingFamily::TwoDimExp, 1e-3), cfg);
  const Eigenvalue strong = find_eigenvalue(params(CouplingFamily::TwoDimExp, 1e-2), cfg);
  EXPECT_TRUE(std::isfinite(weak.log_gap));
  EXPECT_LT(weak.log_gap, strong.log_gap);
  // For small g^2 the gap behaves like exp(-(E2 - E1) / g^2).
  EXPECT_NEAR(weak.log_gap * 1e-3, -1.0, 0.02);
}

TEST(Eigenvalue, DecreasesWithCoupling) {
  const QuadratureConfig cfg;
  double previous = 0.0;
  for (double g_sq : {1.5, 2.0, 3.0, 4.0, 6.0}) {
    const double e0 = find_eigenvalue(params(CouplingFamily::ThreeDimExp, g_sq), cfg).value;
    EXPECT_LT(e0, previous);
    previous = e0;
  }
}

TEST(Weight, InUnitIntervalAndMatchesOracle) {
  const QuadratureConfig cfg;
  for (const ModelParams& p :
       {params(CouplingFamily::TwoDimExp, 0.5), params(CouplingFamily::ThreeDimExp, 2.0)}) {
    const Eigenvalue e = find_eigenvalue(p, cfg);
    const double w = eigen_weight(p, e, cfg);
    EXPECT_GT(w, 0.0);
    EXPECT_LT(w, 1.0);
    EXPECT_NEAR(w, oracle::eigen_weight(p, p.e1 - e.value), 1e-9);
  }
}

TEST(Density, NonNegativeAndMatchesOracle) {
  const QuadratureConfig cfg;
  for (auto family : {CouplingFamily::TwoDimExp, CouplingFamily::ThreeDimExp}) {
    const ModelParams p = params(family, 0.7);
    EXPECT_EQ(spectral_density(p, -0.5, cfg), 0.0);
    for (double t : {0.01, 0.3, 0.9, 1.0, 2.5, 10.0}) {
      const double rho = spectral_density(p, t, cfg);
      EXPECT_GE(rho, 0.0);
      EXPECT_NEAR(rho, oracle::spectral_density(p, t), 1e-7 * std::max(1.0, rho)) << t;
    }
  }
}

TEST(SpectralData, NormalizationAcrossMatrix) {
  const QuadratureConfig cfg;
  for (const ModelParams& p :
       {params(CouplingFamily::TwoDimExp, 0.5), params(CouplingFamily::TwoDimExp, 0.1),
        params(CouplingFamily::ThreeDimExp, 2.0), params(CouplingFamily::ThreeDimExp, 1.5),
        params(CouplingFamily::ThreeDimExp, 0.5), params(CouplingFamily::ThreeDimExp, 0.1)}) {
    const SpectralData s = build_spectral_data(p, {}, cfg);
    EXPECT_LE(s.normalization_defect, 1e-6);
    EXPECT_NEAR(s.weight + s.density_mass + s.density_tail_mass, 1.0, 1e-6);
    for (const DensityPanel& panel : s.panels) {
      EXPECT_LT(panel.lo, panel.hi);
      for (double v : panel.values) EXPECT_GE(v, 0.0);
    }
  }
}

TEST(SpectralData, DensityTableIsOrdered) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::ThreeDimExp, 2.0), {}, {});
  const auto table = s.density_table();
  ASSERT_GT(table.size(), 100u);
  EXPECT_EQ(table.front().lambda, 0.0);
  for (std::size_t i = 1; i < table.size(); ++i) EXPECT_GT(table[i].lambda, table[i - 1].lambda);
  EXPECT_LE(table.back().lambda, s.lambda_max());
}

TEST(SpectralData, DecoupledIsPointMass) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::TwoDimExp, 0.0), {}, {});
  EXPECT_TRUE(s.decoupled);
  EXPECT_EQ(s.weight, 1.0);
  EXPECT_TRUE(s.panels.empty());
}

TEST(SpectralData, MarginalInputRejected) {
  EXPECT_EQ(code_of([] {
              build_spectral_data(params(CouplingFamily::ThreeDimExp, 1.0), {}, {});
            }),
            ErrorCode::MarginalThreshold);
}
