#include <gtest/gtest.h>

#include <string>

#include "spdecay/error.hpp"
#include "spdecay_tools/scenario.hpp"

using namespace spdecay;
using namespace spdecay::tools;

namespace {

const std::string kBase =
    "name = demo\n"
    "model.e1 = 0\n"
    "model.e2 = 1.5   # upper level\n"
    "coupling.family = 3d-exp\n"
    "coupling.g_sq = 2\n"
    "coupling.lambda_cutoff = 0.5\n";

ErrorCode parse_error(const std::string& text, std::string* message = nullptr) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Scenario, ParsesRequiredKeys) {
  const Scenario s = parse_scenario(kBase);
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(s.params.e2, 1.5);
  EXPECT_EQ(s.params.coupling.family, CouplingFamily::ThreeDimExp);
  EXPECT_EQ(s.params.coupling.strength_sq, 2.0);
  EXPECT_EQ(s.params.coupling.cutoff, 0.5);
  EXPECT_FALSE(s.sweep.has_value());
  EXPECT_DOUBLE_EQ(s.effective_horizon(), 200.0 / 1.5);
}

TEST(Scenario, ParsesOptionalSections) {
  const Scenario s = parse_scenario(kBase +
                                    "quadrature.abs_tol = 1e-12\n"
                                    "quadrature.max_subdivisions = 100\n"
                                    "evolution.horizon = 30\n"
                                    "evolution.points = 300\n"
                                    "volterra.step = 0.005\n"
                                    "output.dir = results\n"
                                    "sweep.parameter = lambda_cutoff\n"
                                    "sweep.values = 0.5, 1, 2\n");
  EXPECT_EQ(s.quadrature.abs_tol, 1e-12);
  EXPECT_EQ(s.quadrature.max_subdivisions, 100);
  EXPECT_EQ(s.effective_horizon(), 30.0);
  EXPECT_EQ(s.points, 300);
  EXPECT_EQ(s.volterra_step, 0.005);
  EXPECT_EQ(s.output_dir, "results");
  ASSERT_TRUE(s.sweep.has_value());
  EXPECT_EQ(s.sweep->parameter, SweepParameter::Cutoff);
  EXPECT_EQ(s.sweep->values, (std::vector<double>{0.5, 1.0, 2.0}));
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  std::string message;
  EXPECT_EQ(parse_error(kBase + "coupling.g_sq = 3\n", &message), ErrorCode::Config);
  EXPECT_NE(message.find("line 7"), std::string::npos) << message;
  EXPECT_EQ(parse_error(kBase + "bogus.key = 1\n", &message), ErrorCode::Config);
  EXPECT_NE(message.find("bogus.key"), std::string::npos);
  EXPECT_EQ(parse_error(kBase + "evolution.horizon = fast\n"), ErrorCode::Config);
  EXPECT_EQ(parse_error(kBase + "just words\n"), ErrorCode::Config);
}

TEST(Scenario, RejectsInvalidModel) {
  EXPECT_EQ(parse_error("name = x\nmodel.e1 = 1\nmodel.e2 = 1\ncoupling.family = 2d-exp\n"
                        "coupling.g_sq = 1\ncoupling.lambda_cutoff = 1\n"),
            ErrorCode::Config);
  EXPECT_EQ(parse_error("name = x\nmodel.e1 = 0\nmodel.e2 = 1\ncoupling.family = 5d\n"
                        "coupling.g_sq = 1\ncoupling.lambda_cutoff = 1\n"),
            ErrorCode::Config);
  EXPECT_EQ(parse_error("name = x\nmodel.e1 = 0\nmodel.e2 = 1\n"), ErrorCode::Config);
  EXPECT_EQ(parse_error(kBase + "sweep.parameter = g_sq\n"), ErrorCode::Config);
  EXPECT_EQ(parse_error(kBase + "sweep.parameter = level_gap\nsweep.values = 1, -2\n"),
            ErrorCode::Config);
  EXPECT_EQ(parse_error(kBase + "quadrature.abs_tol = 0\n"), ErrorCode::Config);
}

TEST(Scenario, SweepValueApplication) {
  const ModelParams base = parse_scenario(kBase).params;
  EXPECT_EQ(with_sweep_value(base, SweepParameter::StrengthSq, 4.0).coupling.strength_sq, 4.0);
  EXPECT_EQ(with_sweep_value(base, SweepParameter::Cutoff, 3.0).coupling.cutoff, 3.0);
  EXPECT_EQ(with_sweep_value(base, SweepParameter::LevelGap, 0.25).level_gap(), 0.25);
}
