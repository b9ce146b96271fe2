#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "example_systems.hpp"
#include "rdlab/model/reaction_system.hpp"

using namespace rdlab;
using rdlab::testing::polynomial_system;
using rdlab::testing::reversible_system;

TEST(EvaluateF, EquilibriumOfReversibleReaction) {
  const auto sys = reversible_system(1, 1, 3);
  const std::vector<double> u{1, 1, 1};
  for (double v : evaluate_f(sys, u, 0.0)) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(EvaluateF, ReversibleReactionOffEquilibrium) {
  const auto sys = reversible_system(1, 1, 3);
  const std::vector<double> u{2, 1, 1};
  const auto f = evaluate_f(sys, u, 0.0);
  EXPECT_DOUBLE_EQ(f[0], -1.0);
  EXPECT_DOUBLE_EQ(f[1], -1.0);
  EXPECT_DOUBLE_EQ(f[2], 3.0);
}

TEST(EvaluateF, TimeDependentMonomial) {
  const auto sys = polynomial_system({{make_monomial(1.0, {1}, std::log(2.0))}});
  const std::vector<double> u{3.0};
  EXPECT_NEAR(evaluate_f(sys, u, 1.0)[0], 6.0, 1e-14);
}

TEST(EvaluateF, RejectsNonFiniteState) {
  const auto sys = reversible_system(1, 1, 3);
  const std::vector<double> u{1, std::nan(""), 1};
  EXPECT_THROW(evaluate_f(sys, u, 0.0), InvalidInput);
}

TEST(Jacobian, ProductRule) {
  const Polynomial p{make_monomial(-1.0, {1, 1})};
  const auto sys = polynomial_system({p, p});
  const std::vector<double> u{1, 1};
  const auto J = jacobian_f(sys, u, 0.0);
  for (const auto& row : J)
    for (double v : row) EXPECT_DOUBLE_EQ(v, -1.0);
}

TEST(Jacobian, ReversibleReactionRowsAreScaledGradientOfRate) {
  const auto sys = reversible_system(1, 1, 3);
  const std::vector<double> u{1, 1, 1};
  const auto J = jacobian_f(sys, u, 0.0);
  const std::vector<std::vector<double>> expected{{-1, -1, 3}, {-1, -1, 3}, {3, 3, -9}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(J[i][j], expected[i][j]) << i << "," << j;
}

TEST(Jacobian, ZeroPolynomialGivesZeroMatrix) {
  const auto sys = polynomial_system({Polynomial{}, Polynomial{}});
  const std::vector<double> u{2, 3};
  for (const auto& row : jacobian_f(sys, u, 0.0))
    for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(GrowthDegree, Examples) {
  EXPECT_EQ(growth_degree(reversible_system(2, 2, 3)).overall, 4u);
  const auto linear = polynomial_system({{make_monomial(-1.0, {1, 0})}, {make_monomial(1.0, {1, 0})}});
  EXPECT_EQ(growth_degree(linear).overall, 1u);
  EXPECT_EQ(growth_degree(polynomial_system({Polynomial{}})).overall, 0u);
}

TEST(Network, LeftNullVectorsAnnihilateF) {
  for (unsigned alpha : {1u, 2u}) {
    for (unsigned gamma : {1u, 3u}) {
      const unsigned beta = 2;
      const auto sys = reversible_system(alpha, beta, gamma);
      const std::vector<std::vector<double>> nulls{{double(gamma), 0, double(alpha)}, {0, double(gamma), double(beta)}};
      for (const auto& e : nulls) EXPECT_TRUE(is_zero(linear_combination(std::span(sys.f), std::span(e))));
    }
  }
}

TEST(Network, StoichiometryAndDetailedBalance) {
  const auto net = rdlab::testing::reversible_network(2, 2, 3);
  const auto S = net.stoichiometry();
  ASSERT_EQ(S.size(), 3u);
  EXPECT_DOUBLE_EQ(S[0][0], -2.0);
  EXPECT_DOUBLE_EQ(S[2][0], 3.0);
  EXPECT_TRUE(net.detailed_balance_unit());
}

TEST(ReactionSystem, ValidateRejectsMismatchedSizes) {
  auto sys = reversible_system(1, 1, 3);
  sys.weights = std::vector<double>{1.0, 1.0};
  EXPECT_THROW(sys.validate(), ConfigError);
}
