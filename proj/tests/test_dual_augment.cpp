#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "example_systems.hpp"
#include "rdlab/solver/augment.hpp"
#include "rdlab/solver/dual.hpp"
#include "rdlab/solver/run.hpp"

using namespace rdlab;
using rdlab::testing::polynomial_system;
using rdlab::testing::reversible_system;

namespace {

GridState bump(const Grid1D& g) {
  GridState s{g, 0.0, {Field(g.size())}};
  for (std::size_t j = 0; j < g.size(); ++j) s.u[0][j] = 1.0 + std::cos(3.14159265358979 * g.x(j));
  return s;
}

double dual_residual(double dt) {
  const auto sys = polynomial_system({Polynomial{}});
  SchemeConfig c;
  c.dt = dt;
  c.t_end = 0.1;
  c.snapshot_every = 1000000;
  return run(sys, bump(Grid1D(1.0, 32)), c).dual->residual;
}

}  // namespace

TEST(Dual, ZeroDataGivesZeroResidual) {
  const auto sys = polynomial_system({Polynomial{}});
  SchemeConfig c;
  c.dt = 1e-3;
  c.t_end = 0.1;
  const auto res = run(sys, GridState{Grid1D(1.0, 16), 0.0, {Field(16, 0.0)}}, c);
  ASSERT_TRUE(res.dual);
  EXPECT_EQ(res.dual->residual, 0.0);
  for (double v : res.dual->v) EXPECT_EQ(v, 0.0);
}

TEST(Dual, ResidualIsFirstOrderInTime) {
  const double r1 = dual_residual(2e-3);
  const double r2 = dual_residual(1e-3);
  EXPECT_GT(r1, 0.0);
  EXPECT_NEAR(std::log2(r1 / r2), 1.0, 0.3);
}

TEST(Dual, SnapshotAccumulationMatchesStreaming) {
  const auto sys = polynomial_system({Polynomial{}});
  SchemeConfig c;
  c.dt = 1e-3;
  c.t_end = 0.05;
  c.snapshot_every = 1;
  const auto res = run(sys, bump(Grid1D(1.0, 16)), c);
  const auto offline = dual_accumulate(res.trajectory, sys);
  for (std::size_t j = 0; j < offline.v.size(); ++j) EXPECT_NEAR(offline.v[j], res.dual->v[j], 1e-15);
}

TEST(Dual, BBoundsOnMixedDiffusion) {
  const auto sys = reversible_system(1, 1, 2, {0.5, 1.0, 2.0});
  SchemeConfig c;
  c.dt = 1e-3;
  c.t_end = 1.0;
  GridState s{Grid1D(1.0, 32), 0.0, std::vector<Field>(3, Field(32))};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 32; ++j) s.u[i][j] = 1.0 + 0.8 * std::cos((i + 1.0) * 3 * s.grid.x(j));
  const auto res = run(sys, s, c);
  ASSERT_TRUE(res.dual);
  EXPECT_DOUBLE_EQ(res.dual->b_lower, 0.5);
  EXPECT_DOUBLE_EQ(res.dual->b_upper, 2.0);
  EXPECT_GE(res.dual->b_min_observed, 0.5);
  EXPECT_LE(res.dual->b_max_observed, 2.0);
  EXPECT_TRUE(res.dual->g_exact);
}

TEST(Dual, VariableDiffusionUnsupported) {
  auto sys = polynomial_system({Polynomial{}});
  sys.diffusion = DiffusionField::per_cell({Field(8, 1.0)});
  EXPECT_THROW(DualAccumulator(sys, GridState{Grid1D(1.0, 8), 0.0, {Field(8, 1.0)}}), Unsupported);
}

TEST(Augment, ZeroRateKeepsTerms) {
  auto sys = reversible_system(1, 1, 3);
  sys.mass_control = MassControl{0.7, 0.0};
  const auto aug = augment_mass_control(sys);
  ASSERT_EQ(aug.size(), 4u);
  const std::vector<double> w{1.3, 0.4, 2.0, 5.0};
  const std::vector<double> u{1.3, 0.4, 2.0};
  const auto f = evaluate_f(sys, u, 0.0);
  const auto g = evaluate_f(aug, w, 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(g[i], f[i], 1e-13);
  EXPECT_NEAR(g[3], 0.7 - (f[0] + f[1] + f[2]), 1e-13);
}

TEST(Augment, QuadraticDestructionAgainstDirectFormula) {
  auto sys = polynomial_system({{make_monomial(-1.0, {2})}});
  sys.mass_control = MassControl{0.0, 1.0};
  const auto aug = augment_mass_control(sys);
  const double t = 0.3;
  const std::vector<double> w{1.0, 0.0};
  const double direct = std::exp(-t) * (-std::exp(2 * t)) - 1.0;
  EXPECT_NEAR(evaluate_f(aug, w, t)[0], direct, 1e-14);
}

TEST(Augment, SumIdentityOnRandomSystems) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-2, 2), W(0, 3), T(0, 2), K(0, 2);
  std::uniform_int_distribution<unsigned> E(0, 2);
  for (int s = 0; s < 10; ++s) {
    std::vector<Polynomial> f(3);
    for (auto& p : f)
      for (int k = 0; k < 4; ++k) p.push_back(make_monomial(U(rng), {E(rng), E(rng), E(rng)}));
    auto sys = polynomial_system(f);
    const double k0 = K(rng), k1 = K(rng);
    sys.mass_control = MassControl{k0, k1};
    const auto aug = augment_mass_control(sys);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> w{W(rng), W(rng), W(rng), W(rng)};
      const double t = T(rng);
      double total = 0.0, scale = std::abs(k0 * std::exp(-k1 * t));
      for (double g : evaluate_f(aug, w, t)) {
        total += g;
        scale += std::abs(g);
      }
      EXPECT_NEAR(total, k0 * std::exp(-k1 * t), 1e-12 * scale);
    }
  }
}

TEST(Augment, RequiresAutonomousInputAndConstants) {
  auto sys = polynomial_system({{make_monomial(-1.0, {1}, 0.5)}});
  sys.mass_control = MassControl{0, 1};
  EXPECT_THROW(augment_mass_control(sys), Unsupported);
  sys.mass_control.reset();
  EXPECT_THROW(augment_mass_control(sys), InvalidInput);
}
