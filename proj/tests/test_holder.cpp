#include <cmath>

#include <gtest/gtest.h>

#include "rdlab/grid/holder.hpp"

using namespace rdlab;

TEST(Holder, LinearFieldIsLipschitz) {
  const Grid1D g(1.0, 256);
  const auto est = holder_fit(g.centers(), g);
  EXPECT_NEAR(est.exponent, 1.0, 1e-6);
  EXPECT_NEAR(est.constant, 1.0, 1e-6);
}

TEST(Holder, ConstantFieldIsDegenerate) {
  const Grid1D g(1.0, 64);
  const auto est = holder_fit(Field(64, 2.0), g);
  EXPECT_EQ(est.exponent, 1.0);
  EXPECT_EQ(est.constant, 0.0);
}

TEST(Holder, SquareRootHasHalfExponent) {
  const Grid1D g(1.0, 1024);
  Field f(1024);
  for (std::size_t j = 0; j < 1024; ++j) f[j] = std::sqrt(g.x(j));
  const std::vector<double> cand{0.5, 0.6};
  const auto est = holder_fit(f, g, cand);
  EXPECT_NEAR(est.exponent, 0.5, 0.05);
  ASSERT_EQ(est.candidates.size(), 2u);
  EXPECT_LT(est.candidates[0].second, 1.5);
}

TEST(Holder, SquareRootSeminormDivergesAboveHalf) {
  auto seminorm = [](std::size_t n, double gamma) {
    const Grid1D g(1.0, n);
    Field f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::sqrt(g.x(j));
    const std::vector<double> cand{gamma};
    return holder_fit(f, g, cand).candidates[0].second;
  };
  EXPECT_LT(seminorm(4096, 0.5) / seminorm(256, 0.5), 1.05);
  EXPECT_GT(seminorm(4096, 0.6) / seminorm(256, 0.6), 1.2);
}

TEST(Holder, TooFewLevels) {
  const Grid1D g(1.0, 4);
  EXPECT_THROW(holder_fit(Field(4, 0.0), g), InvalidInput);
}

TEST(Holder, TimeSeriesOfSquareRootTime) {
  std::vector<double> s(512);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::sqrt(0.01 * k);
  const auto est = holder_fit_time(s, 0.01);
  EXPECT_NEAR(est.exponent, 1.0, 0.05);
}

TEST(Holder, FaceGradientHasZeroBoundaryFluxes) {
  const Grid1D g(1.0, 4);
  const auto fg = face_gradient(Field{0, 1, 3, 6}, g);
  EXPECT_EQ(fg, (Field{0, 4, 8, 12, 0}));
}
