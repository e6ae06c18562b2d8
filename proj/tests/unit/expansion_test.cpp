#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pasym/errors.hpp"
#include "pasym/expansion.hpp"
#include "pasym/moments.hpp"
#include "support.hpp"

using namespace pasym;
using pasym::testing::benchmark;
using pasym::testing::gaussian;
using pasym::testing::index_at_or_after;
using pasym::testing::simpson;

// ---------------------------------------------------------------------------
// U0 and U_n
// ---------------------------------------------------------------------------

TEST(U0, RemainderIsTheProjection) {
  const auto& b = benchmark("cd-p3-k2");
  for (std::size_t k : {std::size_t{0}, std::size_t{60}, b.traj.size() - 1}) {
    const double t = b.traj.time(k);
    const Field& u = b.traj.state(k)[0];
    const Field rest = u - build_U0(b.traj, 2.0, t)[0];
    EXPECT_LT(lq_norm(rest - project_P(u, t, 2), 1.0), 1e-15);
    for (const MultiIndex& a : indices_up_to(1, 2)) {
      EXPECT_LT(std::abs(moment_coefficients(rest, t, 2).at(a)), 1e-12 * weighted_l1_norm(u, a.order())) << a.to_string();
    }
  }
}

TEST(U0, UsesTheIntegerPartOfK) {
  const auto& traj = benchmark("cd-p3-k2").traj;
  const double t = traj.time(40);
  EXPECT_EQ(lq_norm(build_U0(traj, 1.7, t)[0] - build_U0(traj, 1.0, t)[0], kInfinity), 0.0);
}

TEST(Un, ZeroNonlinearityLeavesU0Unchanged) {
  const auto& b = benchmark("heat-shift-k1");
  const auto u0 = build_Un(b.traj, b.nl, 1.0, 0);
  const auto u3 = build_Un(b.traj, b.nl, 1.0, 3);
  for (std::size_t k = 0; k < b.traj.size(); k += 11) {
    EXPECT_EQ(lq_norm(u3.values[k][0] - u0.values[k][0], kInfinity), 0.0);
  }
}

TEST(Un, OrderAboveFourIsRefused) {
  const auto& b = benchmark("cd-p3-k2");
  EXPECT_THROW(build_Un(b.traj, b.nl, 2.0, 5), DomainError);
  EXPECT_THROW(build_Un(b.traj, b.nl, 2.0, -1), DomainError);
}

// Every correction term is built from projected forcing, so its low moments vanish.
TEST(Un, CorrectionsHaveVanishingMoments) {
  const auto& b = benchmark("cd-p3-k2");
  const auto u1 = build_Un(b.traj, b.nl, 2.0, 1);
  for (std::size_t k = 1; k < b.traj.size(); k += 13) {
    const Field& d = u1.corrections[k][0];
    const double scale = weighted_l1_norm(d, 2.0) + 1e-300;
    for (const MultiIndex& a : indices_up_to(1, 2)) {
      EXPECT_LT(std::abs(moment_of_field(d, a)), 1e-9 * scale + 1e-18) << "t " << b.traj.time(k);
    }
  }
}

TEST(Un, FirstCorrectionImprovesTheApproximation) {
  const auto& b = benchmark("cd-p3-k2");
  const auto u0 = build_Un(b.traj, b.nl, 2.0, 0);
  const auto u1 = build_Un(b.traj, b.nl, 2.0, 1);
  for (double t : {20.0, 50.0, 100.0}) {
    const std::size_t k = index_at_or_after(b.traj, t);
    const Field& u = b.traj.state(k)[0];
    EXPECT_LT(lq_norm(u - u1.values[k][0], 1.0), 0.5 * lq_norm(u - u0.values[k][0], 1.0)) << t;
  }
}

// sup t^{N/2}‖U_n‖∞ stays bounded: the late half never exceeds the early half by much.
TEST(Un, ProfilesDecayLikeTheHeatKernel) {
  const auto& b = benchmark("cd-p3-k2");
  for (int n = 0; n <= 2; ++n) {
    const auto p = build_Un(b.traj, b.nl, 2.0, n);
    double early = 0.0, late = 0.0;
    for (std::size_t k = 0; k < b.traj.size(); ++k) {
      const double t = b.traj.time(k);
      if (t < 1.0) continue;
      const double v = std::sqrt(t) * lq_norm(p.values[k][0], kInfinity);
      (t < b.traj.horizon() / 2 ? early : late) = std::max(t < b.traj.horizon() / 2 ? early : late, v);
    }
    EXPECT_LT(late, 1.5 * early) << "n " << n;
  }
}

TEST(Un, UnsupportedLawIsFlagged) {
  const auto g = Grid::make(1, 40.0, 1024);
  SolveConfig cfg;
  cfg.horizon = 2.0;
  const auto nl = make_semilinear(1, -1.0, 3.0);
  const auto traj = solve(nl, {gaussian(g, 0.1)}, cfg);
  const auto p = build_Un(traj, nl, 1.0, 1);
  EXPECT_TRUE(p.flagged);
  EXPECT_FALSE(p.notes.empty());
}

// ---------------------------------------------------------------------------
// Frozen-moment and hat variants
// ---------------------------------------------------------------------------

TEST(Tilde, ArgumentChecks) {
  const auto& b = benchmark("cd-p3-k2");
  EXPECT_THROW(build_tilde_u(b.traj, b.nl, 2.0, 3), DomainError);
  EXPECT_THROW(build_tilde_u(b.traj, b.nl, 2.0, -1), DomainError);
  const auto g = Grid::make(1, 40.0, 512);
  SolveConfig cfg;
  cfg.horizon = 1.0;
  const auto weak = make_semilinear(1, 1.0, 2.0);
  EXPECT_THROW(build_tilde_u(solve(weak, {gaussian(g, 0.1)}, cfg), weak, 1.0, 0), DomainError);
}

TEST(Tilde, ZeroOrderFreezeCoincidesWithHat) {
  const auto& b = benchmark("cd-p3-k2");
  const auto tilde = build_tilde_u(b.traj, b.nl, 2.0, 0);
  const auto hat = build_hat_u(b.traj, b.nl, 2.0);
  for (std::size_t k = 0; k < b.traj.size(); k += 7) {
    const Field& u = b.traj.state(k)[0];
    EXPECT_LT(lq_norm(tilde.values[k][0] - hat.values[k][0], 1.0), 1e-10 * lq_norm(u, 1.0)) << b.traj.time(k);
  }
}

TEST(Tilde, DiagnosticsRecordFrozenMoments) {
  const auto& b = benchmark("cd-p3-k2");
  const auto tilde = build_tilde_u(b.traj, b.nl, 2.0, 1);
  EXPECT_DOUBLE_EQ(tilde.diagnostics.at("J_A"), 1.0);
  EXPECT_NEAR(tilde.diagnostics.at("frozen_M_0_u0"), integral(b.traj.state(0)[0]), 1e-12);
}

namespace {

double gauss1(double x, double t) { return kernel::gauss(std::span<const double>(&x, 1), t); }

// Closed form of the hat profile for u_t = u_xx + (u³)_x with limit mass M:
// F_M(s) = M³ c(s) ∂ₓG(·,(1+s)/3) with c(s) = (4π(1+s))^{-1} 3^{-1/2}.
double hat_oracle(double x, double t, double M, double c1, double c2) {
  const double p = 3.0;
  const double mp = std::pow(M, p);
  auto c = [&](double s) { return std::pow(4.0 * std::numbers::pi * (1.0 + s), -(p - 1.0) / 2.0) / std::sqrt(p); };
  auto dg = [](double y, double tau) { return -y / (2.0 * tau) * gauss1(y, tau); };
  // s = e^v − 1 spreads the nodes evenly on a log scale.
  const double duhamel = simpson(
      [&](double v) {
        const double s = std::expm1(v);
        return (1.0 + s) * c(s) * dg(x, t - s + (1.0 + s) / p);
      },
      0.0, std::log1p(t), 4000);
  const double y = x;
  const double g1 = kernel::g_alpha(MultiIndex({1}), std::span<const double>(&y, 1), t);
  const double g2 = kernel::g_alpha(MultiIndex({2}), std::span<const double>(&y, 1), t);
  return M * gauss1(x, 1.0 + t) + c1 * g1 + c2 * g2 + mp * duhamel;
}

}  // namespace

TEST(Hat, MatchesClosedFormForCubicConvection) {
  const auto& b = benchmark("cd-p3-k2");
  const auto hat = build_hat_u(b.traj, b.nl, 2.0);
  const double M = integral(b.traj.state(0)[0]);
  for (double target : {20.0, 100.0}) {
    const std::size_t k = index_at_or_after(b.traj, target);
    const double t = b.traj.time(k);
    const Field& u = b.traj.state(k)[0];
    const auto m = moment_coefficients(u, t, 2);
    const double c1 = m.at(MultiIndex({1})) + std::pow(M, 3) / (4.0 * std::numbers::pi * std::sqrt(3.0)) * std::log1p(t);
    const double c2 = m.at(MultiIndex({2}));
    const Grid& g = b.traj.grid();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 8) {
      const double x = g.node(i);
      if (std::abs(x) > 12.0 * std::sqrt(1.0 + t)) continue;
      worst = std::max(worst, std::abs(hat.values[k][0][i] - hat_oracle(x, t, M, c1, c2)));
    }
    EXPECT_LT(worst, 1e-6 * lq_norm(u, kInfinity)) << "t " << t;
  }
}

TEST(Hat, ZeroCoefficientVanishesForDivergenceForm) {
  for (const char* id : {"cd-p3-k2", "ks-n1"}) {
    const auto& b = benchmark(id);
    const auto s = c_alpha_series(b.traj, b.nl, MultiIndex({0}));
    for (double v : s.values) EXPECT_NEAR(v, 0.0, 1e-9) << id;
  }
}

TEST(Leading, UsesTheConservedMass) {
  const auto& b = benchmark("ks-n1");
  const auto lead = build_leading(b.traj, b.nl);
  EXPECT_NEAR(lead.diagnostics.at("M_u0"), 0.05, 1e-10);
  EXPECT_FALSE(lead.flagged);
}

// ---------------------------------------------------------------------------
// Tails, limits and coefficient drift
// ---------------------------------------------------------------------------

TEST(PowerLawTail, RecoversExactTail) {
  std::vector<double> t, v;
  for (double s = 1.0; s <= 200.0; s *= 1.05) {
    t.push_back(s);
    v.push_back(3.0 * std::pow(s, -2.5));
  }
  const auto tail = power_law_tail(t, v, 1.0);
  EXPECT_NEAR(tail.exponent, -2.5, 1e-10);
  EXPECT_NEAR(tail.value, 3.0 * std::pow(t.back(), -1.5) / 1.5, 1e-12);
  EXPECT_FALSE(tail.flagged);
}

TEST(PowerLawTail, FlagsWhatItCannotTrust) {
  std::vector<double> t, slow, mixed, tiny;
  for (double s = 1.0; s <= 200.0; s *= 1.05) {
    t.push_back(s);
    slow.push_back(std::pow(s, -0.8));
    mixed.push_back(std::cos(s) / (s * s));
    tiny.push_back(1e-20 / (s * s));
  }
  EXPECT_TRUE(power_law_tail(t, slow, 1.0).flagged);
  EXPECT_TRUE(power_law_tail(t, mixed, 1.0).flagged);
  const auto n = power_law_tail(t, tiny, 1.0);
  EXPECT_TRUE(n.negligible);
  EXPECT_EQ(n.value, 0.0);
}

TEST(LimitMass, SemilinearLimitIncludesTail) {
  const auto& b = benchmark("sl-p4");
  std::vector<TailEstimate> tails;
  const auto M = limit_mass(b.traj, b.nl, &tails);
  ASSERT_EQ(M.size(), 1u);
  const double at_horizon = integral(b.traj.state(b.traj.size() - 1)[0]);
  EXPECT_GT(M[0], at_horizon);
  EXPECT_FALSE(tails[0].flagged);
  EXPECT_LT(tails[0].exponent, -1.0);
}

TEST(Drift, ConservedMassHasNoDrift) {
  const auto& b = benchmark("cd-p3-k2");
  const auto v = coefficient_drift_check(b.traj, b.nl, MultiIndex({0}));
  EXPECT_TRUE(v.pass) << v.note;
}

// For |u|³u with A = 3/2 the mass converges at rate t^{-(A-1)}.
TEST(Drift, SemilinearMassApproachesItsLimit) {
  const auto& b = benchmark("sl-p4");
  const auto v = coefficient_drift_check(b.traj, b.nl, MultiIndex({0}));
  EXPECT_DOUBLE_EQ(v.predicted_exponent, 0.5);
  EXPECT_TRUE(v.pass) << v.fitted_slope;
}

TEST(Drift, FirstMomentOfConvectionGrowsLogarithmically) {
  const auto& b = benchmark("cd-p3-k2");
  const auto v = coefficient_drift_check(b.traj, b.nl, MultiIndex({1}));
  EXPECT_TRUE(v.log_correction);
  EXPECT_EQ(v.note, "growth envelope (A <= 1 + |alpha|/2)");
}
