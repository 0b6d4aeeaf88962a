#include <gtest/gtest.h>

#include <cmath>

#include "spdecay/error.hpp"
#include "spdecay/roots.hpp"

using namespace spdecay;

TEST(Brent, FindsCubeRoot) {
  auto f = [](double x) { return x * x * x - 2.0; };
  const BracketedRoot r = brent_root(f, 0.0, 2.0, f(0.0), f(2.0), 1e-15);
  EXPECT_NEAR(r.root, std::cbrt(2.0), 1e-14);
  EXPECT_LT(r.iterations, 60);
}

TEST(Brent, FinalBracketContainsRoot) {
  auto f = [](double x) { return std::exp(-x) - x; };
  const BracketedRoot r = brent_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-12);
  EXPECT_LE(f(std::min(r.root, r.partner)) * f(std::max(r.root, r.partner)), 0.0);
  EXPECT_NEAR(r.root, 0.567143290409784, 1e-12);
}

TEST(Brent, RejectsUnbracketed) {
  auto f = [](double x) { return x * x + 1.0; };
  EXPECT_THROW(brent_root(f, -1.0, 1.0, f(-1.0), f(1.0), 1e-12), Error);
}
