#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spdecay/error.hpp"
#include "spdecay/evolution.hpp"

using namespace spdecay;

namespace {

ModelParams params(CouplingFamily f, double g_sq, double cutoff = 1.0) {
  ModelParams p;
  p.coupling = {f, g_sq, cutoff};
  return p;
}

}  // namespace

TEST(Amplitude, StartsAtOne) {
  for (auto family : {CouplingFamily::TwoDimExp, CouplingFamily::ThreeDimExp}) {
    const SpectralData s = build_spectral_data(params(family, 0.5), {}, {});
    EXPECT_NEAR(std::abs(amplitude_at(s, 0.0) - 1.0), 0.0, 1e-9);
  }
}

TEST(Amplitude, DecoupledOscillatesAtE2) {
  ModelParams p = params(CouplingFamily::ThreeDimExp, 0.0);
  p.e2 = 2.0;
  const SpectralData s = build_spectral_data(p, {}, {});
  for (double t : {0.0, 1.0, 37.5}) {
    EXPECT_NEAR(std::abs(amplitude_at(s, t) - std::polar(1.0, -2.0 * t)), 0.0, 1e-14);
  }
  EXPECT_EQ(asymptotic_limit(s), 1.0);
}

TEST(Amplitude, ConjugateSymmetry) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::ThreeDimExp, 2.0), {}, {});
  for (double t : {0.3, 5.0, 80.0}) EXPECT_TRUE(conjugate_symmetry_check(s, t));
}

TEST(Amplitude, BoundedByOne) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::TwoDimExp, 0.5), {}, {});
  const AmplitudeSeries series = amplitude_spectral(s, uniform_times(60.0, 600));
  for (double p : series.probability) EXPECT_LE(p, 1.0 + 1e-9);
}

TEST(Amplitude, RejectsTimesBeyondBudget) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::ThreeDimExp, 2.0), {}, {});
  EXPECT_THROW(amplitude_at(s, 1e7), Error);
}

TEST(Amplitude, StableUnderGridRefinement) {
  const ModelParams p = params(CouplingFamily::ThreeDimExp, 1.5);
  const SpectralData coarse = build_spectral_data(p, {}, {});
  DensityGridSpec finer;
  finer.resolution = 2;
  const SpectralData fine = build_spectral_data(p, finer, {});
  EXPECT_EQ(fine.panels.size(), 2 * coarse.panels.size());
  for (double t : {0.5, 10.0, 200.0}) {
    EXPECT_LT(std::abs(amplitude_at(coarse, t) - amplitude_at(fine, t)), 1e-10);
  }
}

TEST(Asymptotics, LimitIsWeightSquared) {
  const SpectralData above = build_spectral_data(params(CouplingFamily::ThreeDimExp, 2.0), {}, {});
  EXPECT_NEAR(asymptotic_limit(above), above.weight * above.weight, 1e-15);
  EXPECT_GT(asymptotic_limit(above), 0.0);
  const SpectralData below = build_spectral_data(params(CouplingFamily::ThreeDimExp, 0.5), {}, {});
  EXPECT_EQ(asymptotic_limit(below), 0.0);
}

TEST(Asymptotics, PlateauReached) {
  const SpectralData s = build_spectral_data(params(CouplingFamily::TwoDimExp, 0.5), {}, {});
  const AmplitudeSeries series = amplitude_spectral(s, uniform_times(400.0, 8000));
  EXPECT_NEAR(window_mean(series, 200.0, 400.0), asymptotic_limit(s), 1e-2);
}

TEST(WeakCoupling, GoldenRuleRate) {
  const ModelParams p = params(CouplingFamily::ThreeDimExp, 0.01);
  const WeakCouplingRate rate = weak_coupling_rate(p, {});
  EXPECT_NEAR(rate.gamma, 2.0 * std::numbers::pi * 0.01 * std::exp(-1.0), 1e-15);

  const SpectralData s = build_spectral_data(p, {}, {});
  const AmplitudeSeries series = amplitude_spectral(s, uniform_times(150.0, 3000));
  const LogFit fit = fit_log_probability(series, 0.1, 0.9);
  EXPECT_GT(fit.samples, 100);
  EXPECT_NEAR(-fit.slope / rate.gamma, 1.0, 0.15);
}

TEST(SeriesHelpers, UniformTimesAndWindowMean) {
  const auto t = uniform_times(2.0, 4);
  ASSERT_EQ(t.size(), 5u);
  EXPECT_DOUBLE_EQ(t[2], 1.0);
  AmplitudeSeries s;
  s.times = t;
  s.probability = {0.0, 1.0, 2.0, 3.0, 4.0};
  s.amplitude.assign(5, {});
  EXPECT_NEAR(window_mean(s, 0.0, 2.0), 2.0, 1e-15);
  EXPECT_NEAR(window_mean(s, 1.0, 2.0), 3.0, 1e-15);
}

TEST(SeriesHelpers, LogFitRecoversSlope) {
  AmplitudeSeries s;
  s.times = uniform_times(10.0, 100);
  for (double t : s.times) {
    s.probability.push_back(0.8 * std::exp(-0.3 * t));
    s.amplitude.emplace_back(std::sqrt(s.probability.back()), 0.0);
  }
  const LogFit fit = fit_log_probability(s, 0.1, 0.9);
  EXPECT_NEAR(fit.slope, -0.3, 1e-12);
  EXPECT_NEAR(std::exp(fit.intercept), 0.8, 1e-12);
}
