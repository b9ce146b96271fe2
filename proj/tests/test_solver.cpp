#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "example_systems.hpp"
#include "rdlab/grid/norms.hpp"
#include "rdlab/solver/run.hpp"

using namespace rdlab;
using rdlab::testing::polynomial_system;
using rdlab::testing::reversible_system;

namespace {

GridState smooth_state(const Grid1D& g, std::size_t m) {
  GridState s{g, 0.0, std::vector<Field>(m, Field(g.size()))};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s.u[i][j] = 1.0 + 0.5 * std::cos((i + 1) * 3.14159 * g.x(j));
  return s;
}

SchemeConfig no_diffusion(double dt, SchemeMode mode) {
  SchemeConfig c;
  c.dt = dt;
  c.t_end = 10 * dt;
  c.mode = mode;
  c.diffusion = false;
  return c;
}

}  // namespace

TEST(Split, SingleDestructionTerm) {
  const auto sys = polynomial_system({{make_monomial(-1.0, {1, 1})}, Polynomial{}});
  const std::vector<double> u{2, 3};
  const auto pd = split_production_destruction(sys, u, 0.0);
  EXPECT_EQ(pd.P[0], 0.0);
  EXPECT_DOUBLE_EQ(pd.Q[0], 3.0);
}

TEST(Split, RecombinesToF) {
  const auto sys = reversible_system(2, 2, 3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> u{U(rng), U(rng), U(rng)};
    const auto pd = split_production_destruction(sys, u, 0.0);
    const auto f = evaluate_f(sys, u, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(pd.P[i], 0.0);
      EXPECT_GE(pd.Q[i], 0.0);
      EXPECT_NEAR(pd.P[i] - u[i] * pd.Q[i], f[i], 1e-12 * (1 + std::abs(f[i])));
    }
    EXPECT_NEAR(pd.P[0], 2.0 * std::pow(u[2], 3), 1e-12 * (1 + pd.P[0]));
    EXPECT_NEAR(pd.Q[0], 2.0 * u[0] * u[1] * u[1], 1e-12 * (1 + pd.Q[0]));
  }
}

TEST(Split, PureProductionHasNoDestruction) {
  const auto sys = polynomial_system({{make_monomial(2.0, {0, 1})}, {make_monomial(1.0, {1, 0})}});
  const std::vector<double> u{1, 1};
  const auto pd = split_production_destruction(sys, u, 0.0);
  EXPECT_EQ(pd.Q, (std::vector<double>{0, 0}));
}

TEST(Split, NotQuasiPositiveIsUnsupportedForPatankar) {
  const auto sys = polynomial_system({{make_monomial(-1.0, {0, 1})}, Polynomial{}});
  const std::vector<double> u{1, 1};
  EXPECT_THROW(split_production_destruction(sys, u, 0.0), Unsupported);
  const Grid1D g(1.0, 4);
  EXPECT_THROW(step(smooth_state(g, 2), sys, no_diffusion(0.1, SchemeMode::RobustPatankar)), Unsupported);
}

TEST(Step, LinearDecayPatankarVersusExplicit) {
  const auto sys = polynomial_system({{make_monomial(-1.0, {1})}});
  const Grid1D g(1.0, 4);
  const GridState s{g, 0.0, {Field(4, 1.0)}};
  const auto pat = step(s, sys, no_diffusion(0.1, SchemeMode::RobustPatankar));
  const auto exp = step(s, sys, no_diffusion(0.1, SchemeMode::ConservativeExplicit));
  EXPECT_NEAR(pat.u[0][0], 1.0 / 1.1, 1e-15);
  EXPECT_NEAR(exp.u[0][0], 0.9, 1e-15);
  EXPECT_LT(std::abs(pat.u[0][0] - std::exp(-0.1)), 0.01);
  EXPECT_LT(std::abs(exp.u[0][0] - std::exp(-0.1)), 0.01);
}

TEST(Step, PureDiffusionConservesMass) {
  const auto sys = polynomial_system({Polynomial{}});
  const Grid1D g(1.0, 64);
  SchemeConfig c;
  c.dt = 1e-2;
  GridState s = smooth_state(g, 1);
  for (int k = 0; k < 50; ++k) {
    const double before = total_mass(s.u[0], g);
    s = step(s, sys, c);
    EXPECT_NEAR(total_mass(s.u[0], g), before, 1e-13 * before);
  }
}

TEST(Step, DiscontinuousDiffusionConservesMass) {
  Field D(40);
  for (std::size_t j = 0; j < 40; ++j) D[j] = j < 20 ? 0.1 : 10.0;
  auto sys = polynomial_system({Polynomial{}});
  sys.diffusion = DiffusionField::per_cell({D});
  const Grid1D g(1.0, 40);
  SchemeConfig c;
  c.dt = 1e-3;
  GridState s = smooth_state(g, 1);
  const double before = total_mass(s.u[0], g);
  for (int k = 0; k < 100; ++k) s = step(s, sys, c);
  EXPECT_NEAR(total_mass(s.u[0], g), before, 1e-12 * before);
  EXPECT_GE(s.min_value(), 0.0);
}

TEST(Step, ExplicitRefinementKeepsPositivity) {
  const auto sys = polynomial_system({{make_monomial(-1000.0, {1})}});
  const Grid1D g(1.0, 4);
  const GridState s{g, 0.0, {Field(4, 1.0)}};
  const auto next = step(s, sys, no_diffusion(0.1, SchemeMode::ConservativeExplicit));
  EXPECT_GE(next.u[0][0], 0.0);
  EXPECT_LT(next.u[0][0], 1e-3);
}

TEST(Step, ExplicitRefinementLimitRaisesStiffness) {
  const auto sys = polynomial_system({{make_monomial(-1000.0, {1})}});
  const Grid1D g(1.0, 4);
  const GridState s{g, 0.0, {Field(4, 1.0)}};
  auto c = no_diffusion(0.1, SchemeMode::ConservativeExplicit);
  c.max_refinements = 2;
  EXPECT_THROW(step(s, sys, c), StiffnessError);
}

TEST(Run, RobustModeStaysNonNegative) {
  const auto sys = reversible_system(2, 2, 3);
  SchemeConfig c;
  c.dt = 1e-3;
  c.t_end = 5.0;
  c.snapshot_every = 1000;
  RunOptions o;
  o.dual = false;
  const auto res = run(sys, smooth_state(Grid1D(1.0, 32), 3), c, o);
  EXPECT_TRUE(res.completed());
  EXPECT_GE(res.min_value, 0.0);
  EXPECT_EQ(res.steps, 5000u);
}

TEST(Run, QuadraticBlowUpNearExactTime) {
  const auto sys = polynomial_system({{make_monomial(1.0, {2})}});
  SchemeConfig c;
  c.dt = 1e-5;
  c.t_end = 0.2;
  c.diffusion = false;
  c.mode = SchemeMode::ConservativeExplicit;
  c.blowup_threshold = 1e6;
  const auto res = run(sys, GridState{Grid1D(1.0, 4), 0.0, {Field(4, 10.0)}}, c);
  ASSERT_EQ(res.termination, Termination::BlowUp);
  ASSERT_TRUE(res.blowup);
  EXPECT_NEAR(res.blowup->t, 0.1, 0.002);
}

TEST(Run, SnapshotsAndDiagnosticsCadence) {
  const auto sys = polynomial_system({Polynomial{}});
  SchemeConfig c;
  c.dt = 0.01;
  c.t_end = 1.0;
  c.snapshot_every = 25;
  c.diagnostics_every = 10;
  const auto res = run(sys, smooth_state(Grid1D(1.0, 16), 1), c);
  EXPECT_EQ(res.trajectory.snapshots.size(), 5u);
  EXPECT_EQ(res.trajectory.diagnostics.size(), 11u);
  EXPECT_NEAR(res.trajectory.snapshots.back().t, 1.0, 1e-12);
}

TEST(Run, RejectsNegativeInitialData) {
  const auto sys = polynomial_system({Polynomial{}});
  SchemeConfig c;
  EXPECT_THROW(run(sys, GridState{Grid1D(1.0, 4), 0.0, {Field{1, -1, 1, 1}}}, c), InvalidInput);
}

TEST(Truncation, Arithmetic) {
  const auto sys = polynomial_system({{make_monomial(4.0, {0, 0})}, {make_monomial(-4.0, {0, 0})}});
  const auto tr = truncate(sys, 0.125);
  const std::vector<double> u{1, 1};
  std::vector<double> out(2);
  tr.evaluate(u, 0.0, out);
  EXPECT_DOUBLE_EQ(out[0], 2.0);
  EXPECT_DOUBLE_EQ(out[1], -2.0);
}

TEST(Truncation, BoundedByInverseEpsAndZeroAtEquilibrium) {
  const auto sys = reversible_system(2, 2, 3);
  const double eps = 1e-3;
  const auto tr = truncate(sys, eps);
  std::vector<double> out(3);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 100.0);
  for (int k = 0; k < 1000; ++k) {
    const std::vector<double> u{U(rng), U(rng), U(rng)};
    tr.evaluate(u, 0.0, out);
    for (double v : out) EXPECT_LE(std::abs(v), 1.0 / eps);
  }
  tr.evaluate(std::vector<double>{1, 1, 1}, 0.0, out);
  for (double v : out) EXPECT_EQ(v, 0.0);
}

TEST(Scheme, ModeNamesRoundTrip) {
  for (auto m : {SchemeMode::ConservativeExplicit, SchemeMode::RobustPatankar})
    EXPECT_EQ(scheme_mode_from_string(to_string(m)), m);
  EXPECT_THROW(scheme_mode_from_string("rk4"), ConfigError);
}
