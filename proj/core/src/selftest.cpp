#include "pasym/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "pasym/dynamics.hpp"
#include "pasym/expansion.hpp"
#include "pasym/kernel.hpp"
#include "pasym/moments.hpp"
#include "pasym/rates.hpp"
#include "pasym/solver.hpp"

namespace pasym {

namespace {

using MomentFn = std::function<double(const MultiIndex&, const MultiIndex&, double)>;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

struct Suite {
  const SelftestOptions& opt;
  std::vector<CheckResult> results;

  // Sensitive checks degrade to a warning below the reference resolution.
  void add(const std::string& name, bool ok, const std::string& detail, bool sensitive = false) {
    CheckStatus s = CheckStatus::Pass;
    if (!ok) s = sensitive && opt.points < kSelftestReferencePoints ? CheckStatus::Warn : CheckStatus::Fail;
    results.push_back({name, s, detail});
  }

  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      results.push_back({name, CheckStatus::Fail, std::string("exception: ") + e.what()});
    }
  }
};

// ∫ x^b g_a(x,t) dx in one dimension by composite Simpson on [-R, R].
double quad_moment_1d(int a, int b, double t) {
  const double R = 30.0 * std::sqrt(1.0 + t);
  const int n = 24000;
  const double h = 2.0 * R / n;
  const MultiIndex alpha({a});
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double x = -R + k * h;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    s += w * std::pow(x, b) * kernel::g_alpha(alpha, std::span<const double>(&x, 1), t);
  }
  return s * h / 3.0;
}

void check_moment_oracle(Suite& suite, const MomentFn& closed) {
  double worst = 0.0;
  for (double t : {0.0, 1.0, 10.0}) {
    for (int a = 0; a <= 4; ++a) {
      for (int b = 0; b <= 4; ++b) {
        const double q = quad_moment_1d(a, b, t);
        const double c = closed(MultiIndex({a}), MultiIndex({b}), t);
        worst = std::max(worst, std::abs(q - c) / std::max(1.0, std::abs(q)));
      }
    }
    // Two dimensions: the integrand factorizes, so the quadrature does too.
    for (const MultiIndex& a : indices_up_to(2, 4)) {
      for (const MultiIndex& b : indices_up_to(2, 4)) {
        const double q = quad_moment_1d(a[0], b[0], t) * quad_moment_1d(a[1], b[1], t);
        const double c = closed(a, b, t);
        worst = std::max(worst, std::abs(q - c) / std::max(1.0, std::abs(q)));
      }
    }
  }
  suite.add("kernel.g_alpha_moment_oracle", worst <= 1e-7, fmt("max deviation %.3e (tol 1e-7)", worst));
}

void check_derivative_ladder(Suite& suite) {
  double worst = 0.0;
  const double h = 1e-4;
  for (int a = 0; a < kernel::kMaxOrder; ++a) {
    for (double t : {0.0, 2.0}) {
      for (double x : {-2.5, -0.7, 0.0, 0.4, 1.9}) {
        const double xp = x + h, xm = x - h;
        const double d = (kernel::g_alpha(MultiIndex({a}), std::span<const double>(&xp, 1), t) -
                          kernel::g_alpha(MultiIndex({a}), std::span<const double>(&xm, 1), t)) /
                         (2.0 * h);
        const double next = kernel::g_alpha(MultiIndex({a + 1}), std::span<const double>(&x, 1), t);
        worst = std::max(worst, std::abs(next + d / (a + 1)));
      }
    }
  }
  suite.add("kernel.g_alpha_derivative_ladder", worst <= 1e-6, fmt("max deviation %.3e (tol 1e-6)", worst));
}

void check_semigroup(Suite& suite, const GridPtr& grid) {
  double worst = 0.0;
  for (const MultiIndex& alpha : indices_up_to(1, 3)) {
    const Field g0 = g_alpha_field(grid, alpha, 0.0);
    for (double t : {1.0, 10.0}) {
      const Field gt = g_alpha_field(grid, alpha, t);
      worst = std::max(worst, lq_norm(heat_apply(g0, t) - gt, 2.0) / lq_norm(gt, 2.0));
    }
  }
  suite.add("field.semigroup_reproduction", worst <= 1e-6, fmt("max relative L2 error %.3e (tol 1e-6)", worst), true);
}

Field random_field(const GridPtr& grid, std::mt19937& rng) {
  std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.5, 2.0), amp(-1.0, 1.0);
  struct Bump {
    double c0, c1, w, a;
  };
  std::vector<Bump> bumps;
  for (int k = 0; k < 3; ++k) bumps.push_back({centre(rng), centre(rng), width(rng), amp(rng)});
  return Field::sample(grid, [&](std::span<const double> x) {
    double s = 0.0;
    for (const Bump& b : bumps) {
      double r2 = (x[0] - b.c0) * (x[0] - b.c0);
      if (x.size() == 2) r2 += (x[1] - b.c1) * (x[1] - b.c1);
      s += b.a * std::exp(-r2 / (4.0 * b.w));
    }
    return s;
  });
}

void check_vanishing(Suite& suite, const GridPtr& grid) {
  std::mt19937 rng(20240611u);
  double worst = 0.0;
  for (int sample = 0; sample < 5; ++sample) {
    const Field f = random_field(grid, rng);
    for (int i = 0; i <= 4; ++i) {
      const double scale = 1.0 + weighted_l1_norm(f, i);
      for (double t : {0.0, 1.0, 10.0}) {
        const Field p = project_P(f, t, i);
        for (const MultiIndex& alpha : indices_up_to(grid->dimension(), i)) {
          worst = std::max(worst, std::abs(moment_of_field(p, alpha)) / scale);
        }
      }
    }
  }
  suite.add("moments.vanishing", worst <= 1e-7, fmt("max scaled moment %.3e (tol 1e-7)", worst), true);
}

void check_commute(Suite& suite, const GridPtr& grid) {
  std::mt19937 rng(7u);
  const Field f = random_field(grid, rng);
  const double r = commute_check(f, 3.0, 3) / lq_norm(f, 1.0);
  suite.add("moments.projection_commutes_with_heat", r <= 1e-7, fmt("relative L1 gap %.3e (tol 1e-7)", r), true);
}

std::vector<Nonlinearity> plug_ins() {
  std::vector<Nonlinearity> v{make_semilinear(1, 1.0, 4.0), make_convection({1.0}, 3.0), make_keller_segel(1)};
  v.push_back(make_system(1, {[](std::span<const double> u) { return u[1] * u[1]; },
                              [](std::span<const double> u) { return u[0] * u[0]; }},
                          2.0));
  return v;
}

void check_zero_law(Suite& suite, const GridPtr& grid) {
  double worst = 0.0;
  for (const Nonlinearity& nl : plug_ins()) {
    std::vector<Field> zero(nl.system_size(), Field::zeros(grid, 0.0));
    ChemotaxisState chem{Field::zeros(grid, 0.0), Field::zeros(grid, 0.0)};
    for (const Field& f : nl(0.0, zero, &chem)) worst = std::max(worst, lq_norm(f, kInfinity));
  }
  suite.add("dynamics.zero_law", worst == 0.0, fmt("max |F(0)| = %.3e", worst));
}

void check_mass_neutrality(Suite& suite, const GridPtr& grid) {
  const Field u = Field::sample(grid, [](std::span<const double> x) { return 0.3 * std::exp(-(x[0] - 0.5) * (x[0] - 0.5) / 3.0); });
  const Field v = Field::sample(grid, [](std::span<const double> x) { return 0.2 * std::exp(-x[0] * x[0] / 5.0); });
  ChemotaxisState chem{v, v};
  double worst = 0.0;
  for (const Nonlinearity& nl : {make_convection({1.0}, 3.0), make_keller_segel(1)}) {
    const std::vector<Field> in{u};
    const Field F = nl(0.0, in, &chem)[0];
    worst = std::max(worst, std::abs(integral(F)) / lq_norm(F, 1.0));
  }
  suite.add("dynamics.mass_neutrality", worst <= 1e-10, fmt("max |int F| / ||F||_1 = %.3e (tol 1e-10)", worst));
}

SolveConfig short_run(double T) {
  SolveConfig cfg;
  cfg.horizon = T;
  return cfg;
}

Field bump(const GridPtr& grid, double mass, double shift) {
  return Field::sample(grid, [&](std::span<const double> x) {
    double y[2] = {x[0] - shift, x.size() == 2 ? x[1] : 0.0};
    return mass * kernel::gauss(std::span<const double>(y, x.size()), 1.0);
  });
}

void check_heat_reproduction(Suite& suite, const GridPtr& grid) {
  const Field phi = bump(grid, 1.0, 1.0);
  const Trajectory traj = solve(make_heat(1), {phi}, short_run(5.0));
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    worst = std::max(worst, lq_norm(traj.state(k)[0] - heat_apply(phi, traj.time(k)), 2.0));
  }
  suite.add("solver.heat_reproduction", worst <= 1e-9, fmt("max L2 error %.3e (tol 1e-9)", worst));
}

void check_mass_audits(Suite& suite, const GridPtr& grid) {
  {
    const Trajectory traj = solve(make_convection({1.0}, 3.0), {bump(grid, 0.1, 0.0)}, short_run(5.0));
    const double drift = mass_and_moment_audit(traj, 0).mass_drift[0];
    suite.add("solver.mass_conservation_convection", drift <= 1e-8, fmt("max mass drift %.3e (tol 1e-8)", drift));
  }
  {
    const Trajectory traj =
        solve(make_keller_segel(1), {bump(grid, 0.05, 1.0)}, short_run(5.0), bump(grid, 0.05, 0.0));
    const double drift = mass_and_moment_audit(traj, 0).mass_drift[0];
    suite.add("solver.mass_conservation_keller_segel", drift <= 1e-8, fmt("max mass drift %.3e (tol 1e-8)", drift));
  }
  {
    const Trajectory traj = solve(make_semilinear(1, 1.0, 4.0), {bump(grid, 0.1, 0.0)}, short_run(5.0));
    const double r = mass_and_moment_audit(traj, 2).max_relative;
    suite.add("solver.moment_evolution_semilinear", r <= 1e-3, fmt("max relative residual %.3e (tol 1e-3)", r));
    const Field u = traj.state(traj.size() - 1)[0];
    const double t = traj.horizon();
    const double gap = lq_norm((u - build_U0(traj, 2.0, t)[0]) - project_P(u, t, 2), 1.0);
    suite.add("expansion.projection_identity", gap <= 1e-12, fmt("L1 gap %.3e (tol 1e-12)", gap));
  }
}

void check_rates(Suite& suite) {
  double worst = 0.0;
  for (double gamma : {0.25, 0.5, 1.0, 2.0}) {
    NormSeries s;
    for (int k = 0; k <= 40; ++k) {
      const double t = 10.0 * std::pow(10.0, k / 40.0);
      s.t.push_back(t);
      s.value.push_back(std::pow(t, -gamma));
    }
    worst = std::max(worst, std::abs(fit_slope(s, {10.0, 100.0}, false) + gamma));
  }
  suite.add("rates.slope_oracle", worst <= 1e-6, fmt("max slope error %.3e (tol 1e-6)", worst));

  NormSeries s;
  for (int k = 0; k <= 40; ++k) {
    const double t = 10.0 * std::pow(10.0, k / 40.0);
    s.t.push_back(t);
    s.value.push_back(1.0 / t);
  }
  const bool honest = verdict_against(s, {1.0, false}, 0.1, {10.0, 100.0}).pass;
  const bool inflated = verdict_against(s, {2.0, false}, 0.1, {10.0, 100.0}).pass;
  suite.add("rates.falsifiability", honest && !inflated, honest && !inflated ? "inflated prediction rejected" : "verdict engine not falsifiable");
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  Suite suite{options, {}};
  MomentFn closed = [](const MultiIndex& a, const MultiIndex& b, double t) { return kernel::g_alpha_moment(a, b, t); };
  if (options.inject_fault == "g-alpha-moment") {
    closed = [](const MultiIndex& a, const MultiIndex& b, double t) {
      return kernel::g_alpha_moment(a, b, t) * (1.0 + 1e-3) + 1e-3;
    };
  } else if (!options.inject_fault.empty()) {
    suite.results.push_back({"selftest.options", CheckStatus::Fail, "unknown fault '" + options.inject_fault + "'"});
  }
  suite.guarded("kernel.g_alpha_moment_oracle", [&] { check_moment_oracle(suite, closed); });
  suite.guarded("kernel.g_alpha_derivative_ladder", [&] { check_derivative_ladder(suite); });

  GridPtr grid;
  try {
    grid = Grid::make(1, 40.0, options.points);
  } catch (const std::exception& e) {
    suite.results.push_back({"selftest.grid", CheckStatus::Fail, e.what()});
    return suite.results;
  }
  const GridPtr grid2 = Grid::make(2, 40.0, std::min<std::size_t>(options.points, 256));
  // Solver checks are not resolution probes; they keep the reference grid.
  const GridPtr solver_grid = Grid::make(1, 40.0, std::max(options.points, kSelftestReferencePoints));
  suite.guarded("field.semigroup_reproduction", [&] { check_semigroup(suite, grid); });
  suite.guarded("moments.vanishing", [&] { check_vanishing(suite, grid); });
  suite.guarded("moments.vanishing_2d", [&] {
    Suite sub{options, {}};
    check_vanishing(sub, grid2);
    for (auto& r : sub.results) {
      r.name += "_2d";
      suite.results.push_back(r);
    }
  });
  suite.guarded("moments.projection_commutes_with_heat", [&] { check_commute(suite, grid); });
  suite.guarded("dynamics.zero_law", [&] { check_zero_law(suite, grid); });
  suite.guarded("dynamics.mass_neutrality", [&] { check_mass_neutrality(suite, grid); });
  suite.guarded("solver.heat_reproduction", [&] { check_heat_reproduction(suite, solver_grid); });
  suite.guarded("solver.mass_audits", [&] { check_mass_audits(suite, solver_grid); });
  suite.guarded("rates.slope_oracle", [&] { check_rates(suite); });
  return suite.results;
}

int report_selftest(std::ostream& out, const std::vector<CheckResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    const char* tag = r.status == CheckStatus::Pass ? "PASS" : (r.status == CheckStatus::Warn ? "WARN" : "FAIL");
    out << tag << "  " << r.name << "  " << r.detail << '\n';
    failures += r.status == CheckStatus::Fail ? 1 : 0;
  }
  out << (failures == 0 ? "selftest passed" : "selftest failed") << " (" << results.size() << " checks, " << failures
      << " failures)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace pasym
