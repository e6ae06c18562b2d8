#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pasym/errors.hpp"
#include "pasym/moments.hpp"
#include "support.hpp"

using namespace pasym;
using pasym::testing::gaussian;
using pasym::testing::random_bumps;

TEST(Bracket, IsFloor) {
  EXPECT_EQ(bracket(0.0), 0);
  EXPECT_EQ(bracket(1.0), 1);
  EXPECT_EQ(bracket(1.5), 1);
  EXPECT_EQ(bracket(2.999), 2);
  EXPECT_THROW(bracket(-0.5), DomainError);
}

// Closed-form oracle in 1D: M₀ = ∫f, M₁ = ∫xf, M₂ = ∫x²f − 2(1+t)M₀.
TEST(MomentCoefficients, MatchLowOrderFormulas) {
  const auto g = Grid::make(1, 40.0, 1024);
  std::mt19937 rng(11);
  const Field f = random_bumps(g, rng);
  const double t = 2.5;
  const auto table = moment_coefficients(f, t, 2);
  const double m0 = integral(f);
  const double m1 = moment_of_field(f, MultiIndex({1}));
  const double m2 = moment_of_field(f, MultiIndex({2})) - 2.0 * (1.0 + t) * m0;
  EXPECT_NEAR(table.at(MultiIndex({0})), m0, 1e-13);
  EXPECT_NEAR(table.at(MultiIndex({1})), m1, 1e-13);
  EXPECT_NEAR(table.at(MultiIndex({2})), m2, 1e-12);
}

TEST(MomentCoefficients, RecoverCoefficientsOfProfileSums) {
  const auto g = Grid::make(2, 40.0, 256);
  const double t = 1.0;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Field f = Field::zeros(g);
  std::vector<std::pair<MultiIndex, double>> want;
  for (const MultiIndex& a : indices_up_to(2, 3)) {
    const double c = coef(rng);
    want.emplace_back(a, c);
    f.add_scaled(c, g_alpha_field(g, a, t));
  }
  const auto table = moment_coefficients(f, t, 3);
  for (const auto& [a, c] : want) EXPECT_NEAR(table.at(a), c, 1e-12) << a.to_string();
}

// Projection kills every moment up to its order, 1D and 2D, random data.
TEST(ProjectP, MomentsVanishUpToOrder) {
  std::mt19937 rng(1);
  for (int dim : {1, 2}) {
    const auto g = Grid::make(dim, 40.0, dim == 1 ? 1024 : 256);
    for (int trial = 0; trial < 4; ++trial) {
      const Field f = random_bumps(g, rng);
      for (int K = 0; K <= 4; ++K) {
        const double t = 0.5 * trial;
        const Field p = project_P(f, t, K);
        for (const MultiIndex& a : indices_up_to(dim, K)) {
          EXPECT_LT(std::abs(moment_of_field(p, a)), 1e-10 * std::max(1.0, weighted_l1_norm(f, a.order())))
              << "dim " << dim << " K " << K << " alpha " << a.to_string();
        }
      }
    }
  }
}

TEST(ProjectP, IsIdempotent) {
  const auto g = Grid::make(1, 40.0, 1024);
  std::mt19937 rng(2);
  const Field f = random_bumps(g, rng);
  const Field once = project_P(f, 1.0, 3);
  const Field twice = project_P(once, 1.0, 3);
  EXPECT_LT(lq_norm(once - twice, 1.0), 1e-12);
}

TEST(ProjectP, CommutesWithHeat) {
  const auto g = Grid::make(1, 60.0, 2048);
  std::mt19937 rng(4);
  const Field phi = random_bumps(g, rng);
  for (double t : {0.5, 3.0, 10.0}) {
    for (int K = 0; K <= 3; ++K) EXPECT_LT(commute_check(phi, t, K), 1e-9) << "t " << t << " K " << K;
  }
}

TEST(ProjectP, RejectsMismatchedTable) {
  const auto g = Grid::make(1, 40.0, 1024);
  const Field f = gaussian(g, 1.0);
  const auto table = moment_coefficients(f, 1.0, 2);
  EXPECT_THROW(project_P(f, table, 2.0, 2), DomainError);
  EXPECT_THROW(project_P(f, table, 1.0, 3), DomainError);
}

TEST(MomentCoefficients, GuardBreachOnTruncatedTail) {
  const auto g = Grid::make(1, 8.0, 256);
  const Field wide = gaussian(g, 1.0, 0.0, 20.0);
  EXPECT_THROW(moment_coefficients(wide, 0.0, 2), GuardBreach);
  EXPECT_THROW(moment_coefficients(wide, 0.0, kMaxMomentOrder + 1), DomainError);
  EXPECT_THROW(moment_coefficients(wide, -1.0, 0), DomainError);
}
