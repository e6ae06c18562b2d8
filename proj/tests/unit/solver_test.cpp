#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "pasym/dynamics.hpp"
#include "pasym/errors.hpp"
#include "pasym/solver.hpp"
#include "support.hpp"

using namespace pasym;
using pasym::testing::gaussian;

TEST(TimeGrid, DefaultShape) {
  SolveConfig cfg;
  const auto t = time_grid(cfg);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 100.0);
  EXPECT_NEAR(t[50], 1.0, 1e-12);
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double dt = t[k] - t[k - 1];
    EXPECT_GT(dt, 0.0);
    EXPECT_LE(dt, cfg.max_dt + 1e-12);
    if (t[k] <= 1.0 + 1e-12) EXPECT_NEAR(dt, 0.02, 1e-12);
  }
}

TEST(TimeGrid, RefinementInsertsMidpoints) {
  SolveConfig cfg;
  cfg.horizon = 20.0;
  const auto coarse = time_grid(cfg);
  cfg.refinement = 1;
  const auto fine = time_grid(cfg);
  ASSERT_EQ(fine.size(), 2 * coarse.size() - 1);
  for (std::size_t k = 0; k < coarse.size(); ++k) EXPECT_EQ(fine[2 * k], coarse[k]);
}

TEST(SolveConfig, ValidateRejectsNonsense) {
  SolveConfig cfg;
  cfg.growth = 1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.horizon = 0.0;
  EXPECT_THROW(time_grid(cfg), DomainError);
  cfg = {};
  cfg.picard_max_iters = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(Solve, HeatReproducesTheGaussian) {
  const auto g = Grid::make(1, 160.0, 4096);
  SolveConfig cfg;
  cfg.horizon = 100.0;
  const auto traj = solve(make_heat(1), {gaussian(g, 1.0)}, cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); k += 7) {
    const Field exact = gaussian(g, 1.0, 0.0, 1.0 + traj.time(k));
    worst = std::max(worst, lq_norm(traj.state(k)[0] - exact, kInfinity));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Solve, ConvectionConservesMass) {
  const auto& traj = pasym::testing::convection_trajectory();
  const double m0 = integral(traj.state(0)[0]);
  for (std::size_t k = 0; k < traj.size(); ++k) EXPECT_NEAR(integral(traj.state(k)[0]), m0, 1e-8 * std::abs(m0));
}

TEST(Solve, ContractChecks) {
  const auto g = Grid::make(1, 40.0, 512);
  SolveConfig cfg;
  cfg.horizon = 1.0;
  EXPECT_THROW(solve(make_keller_segel(1), {gaussian(g, 0.1)}, cfg), ContractViolation);
  EXPECT_THROW(solve(make_semilinear(1, 1.0, 4.0), {gaussian(g, 0.1)}, cfg, gaussian(g, 0.1)), ContractViolation);
  EXPECT_THROW(solve(make_semilinear(1, 1.0, 4.0), {gaussian(g, 0.1), gaussian(g, 0.1)}, cfg), ContractViolation);
}

TEST(Solve, NonConvergenceIsReported) {
  const auto g = Grid::make(1, 40.0, 512);
  SolveConfig cfg;
  cfg.horizon = 1.0;
  cfg.picard_max_iters = 1;
  EXPECT_THROW(solve(make_semilinear(1, -1.0, 3.0), {gaussian(g, 3.0)}, cfg), ConvergenceError);
}

TEST(Solve, GuardBreachWhenMassReachesTheBoundary) {
  const auto g = Grid::make(1, 10.0, 256);
  SolveConfig cfg;
  cfg.horizon = 50.0;
  EXPECT_THROW(solve(make_heat(1), {gaussian(g, 1.0)}, cfg), GuardBreach);
}

// Successive Picard sweeps on one slab contract by at least a factor two.
TEST(Picard, SweepsContract) {
  const auto g = Grid::make(1, 40.0, 1024);
  const auto nl = make_semilinear(1, -1.0, 3.0);
  const std::vector<Field> u{gaussian(g, 2.0)};
  const double dt = 0.05;
  const auto F = nl(0.0, u);
  std::vector<Field> base{heat_apply(u[0], dt) + duhamel_left(F[0], dt, DuhamelRule::Trapezoid)};
  std::vector<Field> it = base;
  double prev = 0.0;
  for (int k = 0; k < 5; ++k) {
    auto next = picard_step(nl, it, 0.0, dt, base, DuhamelRule::Trapezoid);
    const double change = lq_norm(next[0] - it[0], 1.0);
    if (k > 0 && prev > 1e-14) EXPECT_LE(change, 0.5 * prev) << "sweep " << k;
    prev = change;
    it = std::move(next);
  }
}

TEST(Solve, DuhamelConsistency) {
  const auto& traj = pasym::testing::convection_trajectory();
  EXPECT_LT(duhamel_consistency(traj, DuhamelRule::Trapezoid), 5e-4);
}

// Halving every step shrinks the error against a twice-refined reference by at least three.
TEST(Solve, StepHalvingConverges) {
  const auto g = Grid::make(1, 40.0, 1024);
  const auto nl = make_semilinear(1, -1.0, 3.0);
  auto run = [&](int r) {
    SolveConfig cfg;
    cfg.horizon = 5.0;
    cfg.uniform_dt = 0.1;
    cfg.refinement = r;
    return solve(nl, {gaussian(g, 2.0)}, cfg);
  };
  const auto a = run(0), b = run(1), ref = run(3);
  const Field& ua = a.state(a.size() - 1)[0];
  const Field& ub = b.state(b.size() - 1)[0];
  const Field& ur = ref.state(ref.size() - 1)[0];
  const double ea = lq_norm(ua - ur, 1.0), eb = lq_norm(ub - ur, 1.0);
  EXPECT_GT(ea / eb, 3.0) << ea << " " << eb;
}

TEST(Audit, MomentIdentityHoldsOnSolvedTrajectory) {
  const auto& traj = pasym::testing::convection_trajectory();
  const auto audit = mass_and_moment_audit(traj, 2);
  EXPECT_LT(audit.max_relative, 1e-3);
  ASSERT_EQ(audit.mass_drift.size(), 1u);
  EXPECT_LT(audit.mass_drift[0], 1e-8);
  EXPECT_EQ(audit.entries.size(), 3u);
}

// A trajectory whose states are perturbed mid-run must fail the audit.
TEST(Audit, DetectsCorruptedTrajectory) {
  const auto& traj = pasym::testing::convection_trajectory();
  Trajectory bad(traj.grid_ptr(), traj.descriptor(), 1);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    Field u = traj.state(k)[0];
    if (k > traj.size() / 2) u *= 1.01;
    bad.append(traj.time(k), {u}, traj.forcing(k));
  }
  EXPECT_GT(mass_and_moment_audit(bad, 2).max_relative, 1e-3);
}

TEST(Trajectory, DiskRoundTrip) {
  const auto g = Grid::make(1, 40.0, 512);
  SolveConfig cfg;
  cfg.horizon = 2.0;
  const auto traj = solve(make_semilinear(1, 1.0, 4.0), {gaussian(g, 0.5)}, cfg);
  const auto dir = std::filesystem::temp_directory_path() / "pasym_traj_roundtrip";
  std::filesystem::remove_all(dir);
  write_trajectory(dir, traj, "echo = 1\n");
  const auto back = read_trajectory(dir);
  ASSERT_EQ(back.size(), traj.size());
  EXPECT_EQ(back.descriptor(), traj.descriptor());
  for (std::size_t k = 0; k < traj.size(); k += 9) {
    EXPECT_EQ(back.time(k), traj.time(k));
    EXPECT_EQ(lq_norm(back.state(k)[0] - traj.state(k)[0], kInfinity), 0.0);
    EXPECT_EQ(lq_norm(back.forcing(k)[0] - traj.forcing(k)[0], kInfinity), 0.0);
  }
  std::filesystem::remove_all(dir);
}
