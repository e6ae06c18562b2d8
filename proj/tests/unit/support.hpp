#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>

#include "pasym/dynamics.hpp"
#include "pasym/experiment.hpp"
#include "pasym/field.hpp"
#include "pasym/kernel.hpp"
#include "pasym/solver.hpp"

namespace pasym::testing {

inline Field gaussian(const GridPtr& grid, double mass, double shift = 0.0, double width = 1.0) {
  return Field::sample(grid, [=](std::span<const double> x) {
    double y[2] = {x[0] - shift, x.size() == 2 ? x[1] : 0.0};
    return mass * kernel::gauss(std::span<const double>(y, x.size()), width);
  }, 0.0);
}

// A few Gaussian bumps with random centres, widths and signs.
inline Field random_bumps(const GridPtr& grid, std::mt19937& rng, int bumps = 3) {
  std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.5, 2.0), amp(-1.0, 1.0);
  std::vector<std::array<double, 4>> b;
  for (int k = 0; k < bumps; ++k) b.push_back({centre(rng), centre(rng), width(rng), amp(rng)});
  return Field::sample(grid, [&](std::span<const double> x) {
    double s = 0.0;
    for (const auto& p : b) {
      double r2 = (x[0] - p[0]) * (x[0] - p[0]);
      if (x.size() == 2) r2 += (x[1] - p[1]) * (x[1] - p[1]);
      s += p[3] * std::exp(-r2 / (4.0 * p[2]));
    }
    return s;
  });
}

// Composite Simpson on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

inline std::size_t index_at_or_after(const Trajectory& traj, double t) {
  std::size_t k = 0;
  while (k + 1 < traj.size() && traj.time(k) < t) ++k;
  return k;
}

struct Benchmark {
  ExperimentConfig config;
  Nonlinearity nl;
  Trajectory traj;
};

// A registry benchmark solved once per (id, refinement) and shared between tests.
inline const Benchmark& benchmark(const std::string& id, int refinement = 0) {
  static std::map<std::pair<std::string, int>, Benchmark> cache;
  const auto key = std::make_pair(id, refinement);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExperimentConfig cfg = resolve_config(id);
    cfg.set("solver.refinement", std::to_string(refinement));
    const GridPtr grid = make_grid(cfg);
    Nonlinearity nl = make_nonlinearity(cfg);
    Trajectory traj = solve(nl, make_initial_data(cfg, grid), make_solve_config(cfg), make_chemical(cfg, grid));
    it = cache.emplace(key, Benchmark{cfg, std::move(nl), std::move(traj)}).first;
  }
  return it->second;
}

inline const Trajectory& convection_trajectory(int refinement = 0) { return benchmark("cd-p3-k2", refinement).traj; }

}  // namespace pasym::testing
