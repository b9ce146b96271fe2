#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rdlab/grid/grid.hpp"
#include "rdlab/grid/norms.hpp"
#include "rdlab/grid/operators.hpp"
#include "rdlab/grid/snapshot_io.hpp"

using namespace rdlab;

TEST(Laplacian, ConstantsAreInTheKernel) {
  const Grid1D g(2.0, 37);
  for (double v : laplacian_neumann(Field(37, 3.5), g)) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, CosineEigenfunctionSecondOrder) {
  auto max_err = [](std::size_t n) {
    const Grid1D g(1.0, n);
    Field f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::cos(std::numbers::pi * g.x(j));
    const auto L = laplacian_neumann(f, g);
    double e = 0.0;
    // Interior cells; the reflecting ghost makes the boundary cells first order.
    for (std::size_t j = 1; j + 1 < n; ++j) e = std::max(e, std::abs(L[j] + std::numbers::pi * std::numbers::pi * f[j]));
    return e;
  };
  const double e256 = max_err(256);
  EXPECT_LT(e256, 1e-3);
  EXPECT_NEAR(std::log2(max_err(128) / e256), 2.0, 0.1);
}

TEST(Laplacian, TelescopesToZeroMass) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, 1);
  const Grid1D g(1.0, 64);
  Field f(64);
  for (auto& v : f) v = U(rng);
  double s = 0.0;
  for (double v : laplacian_neumann(f, g)) s += v;
  EXPECT_NEAR(s, 0.0, 1e-9);
}

TEST(VariableDiffusion, ConstantCoefficientReducesToLaplacian) {
  const Grid1D g(1.0, 50);
  Field f(50);
  for (std::size_t j = 0; j < 50; ++j) f[j] = std::sin(3.0 * g.x(j)) + g.x(j) * g.x(j);
  const auto a = variable_diffusion_div(f, Field(50, 2.0), g);
  const auto b = laplacian_neumann(f, g);
  for (std::size_t j = 0; j < 50; ++j) EXPECT_NEAR(a[j], 2.0 * b[j], 1e-14 * (1 + std::abs(a[j])));
}

TEST(VariableDiffusion, PiecewiseCoefficientConstantField) {
  const Grid1D g(1.0, 20);
  Field D(20);
  for (std::size_t j = 0; j < 20; ++j) D[j] = j < 10 ? 0.1 : 10.0;
  for (double v : variable_diffusion_div(Field(20, 4.0), D, g)) EXPECT_EQ(v, 0.0);
}

TEST(VariableDiffusion, RejectsNonPositiveCoefficient) {
  const Grid1D g(1.0, 4);
  EXPECT_THROW(variable_diffusion_div(Field(4, 1.0), Field{1, 0, 1, 1}, g), ConfigError);
}

TEST(Reflect, MirrorsIndices) {
  const Field f{1, 2, 3};
  EXPECT_EQ(reflect_extend(f), (Field{3, 2, 1, 1, 2, 3, 3, 2, 1}));
  EXPECT_EQ(restrict_middle(reflect_extend(f)), f);
}

TEST(Norms, ConstantOne) {
  const Grid1D g(1.0, 16);
  const Field one(16, 1.0);
  for (double p : {1.0, 2.0, 3.5, std::numeric_limits<double>::infinity()}) EXPECT_NEAR(lp_norm(one, p, g), 1.0, 1e-14);
  EXPECT_EQ(h1_seminorm(one, g), 0.0);
  EXPECT_EQ(llogl(one, g), 0.0);
}

TEST(Norms, LLogLOfE) {
  const Grid1D g(1.0, 16);
  EXPECT_NEAR(llogl(Field(16, std::numbers::e), g), std::numbers::e, 1e-14);
  EXPECT_THROW(llogl(Field(16, -1.0), g), InvalidInput);
}

TEST(Norms, LengthScaling) {
  const Grid1D g(2.0, 10);
  EXPECT_NEAR(lp_norm(Field(10, 3.0), 2.0, g), 3.0 * std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(total_mass(Field(10, 3.0), g), 6.0, 1e-13);
}

TEST(Grid, RejectsBadGeometry) {
  EXPECT_THROW(Grid1D(0.0, 10), Error);
  EXPECT_THROW(Grid1D(1.0, 0), Error);
}

TEST(Diffusion, PerCellSizeMismatchIsConfigError) {
  const auto d = DiffusionField::per_cell({Field{1, 2, 3}});
  EXPECT_THROW(d.cells(0, 4), ConfigError);
  EXPECT_DOUBLE_EQ(d.lambda(), 1.0);
  EXPECT_THROW(DiffusionField::constant({0.0}), ConfigError);
}

TEST(Snapshot, RoundTripIsExact) {
  const Grid1D g(1.5, 5);
  GridState s{g, 0.125, {Field{1.0 / 3, 2, 3, 4, 5}, Field{0, 1e-300, 7, 8, 9}}};
  std::stringstream ss;
  write_snapshot(ss, s);
  const auto r = read_snapshot(ss);
  EXPECT_EQ(r.t, s.t);
  EXPECT_EQ(r.grid.length(), 1.5);
  EXPECT_EQ(r.u, s.u);
}

TEST(Snapshot, MalformedHeader) {
  std::stringstream ss("# nonsense\n");
  EXPECT_THROW(read_snapshot(ss), InvalidInput);
}
