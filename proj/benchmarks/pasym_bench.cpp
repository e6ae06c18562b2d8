#include <benchmark/benchmark.h>

#include "pasym/dynamics.hpp"
#include "pasym/expansion.hpp"
#include "pasym/kernel.hpp"
#include "pasym/moments.hpp"
#include "pasym/solver.hpp"

namespace {

pasym::Field gaussian(const pasym::GridPtr& grid, double mass) {
  return pasym::Field::sample(grid, [=](std::span<const double> x) { return mass * pasym::kernel::gauss(x, 1.0); }, 0.0);
}

void BM_HeatApply(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, static_cast<std::size_t>(state.range(0)));
  const auto f = gaussian(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pasym::heat_apply(f, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HeatApply)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oNLogN);

void BM_HeatApply2D(benchmark::State& state) {
  const auto grid = pasym::Grid::make(2, 40.0, static_cast<std::size_t>(state.range(0)));
  const auto f = gaussian(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pasym::heat_apply(f, 0.5));
}
BENCHMARK(BM_HeatApply2D)->Arg(128)->Arg(256);

void BM_MomentCoefficients(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, 4096);
  const auto f = gaussian(grid, 1.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pasym::moment_coefficients(f, 10.0, k));
}
BENCHMARK(BM_MomentCoefficients)->DenseRange(0, 4);

void BM_ProjectP(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, 4096);
  const auto f = gaussian(grid, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pasym::project_P(f, 10.0, 2));
}
BENCHMARK(BM_ProjectP);

// One implicit slab with Picard iteration, convection-diffusion on the benchmark grid.
void BM_SolverSlab(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, 4096);
  const auto nl = pasym::make_convection({1.0}, 3.0);
  pasym::SolveConfig cfg;
  cfg.horizon = 0.02;
  const std::vector<pasym::Field> phi{gaussian(grid, 0.1)};
  for (auto _ : state) benchmark::DoNotOptimize(pasym::solve(nl, phi, cfg));
}
BENCHMARK(BM_SolverSlab)->Unit(benchmark::kMillisecond);

void BM_SolveToHorizon(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, 4096);
  const auto nl = pasym::make_convection({1.0}, 3.0);
  pasym::SolveConfig cfg;
  cfg.horizon = 200.0;
  const std::vector<pasym::Field> phi{gaussian(grid, 0.1)};
  for (auto _ : state) benchmark::DoNotOptimize(pasym::solve(nl, phi, cfg));
}
BENCHMARK(BM_SolveToHorizon)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_BuildU1(benchmark::State& state) {
  const auto grid = pasym::Grid::make(1, 160.0, 4096);
  const auto nl = pasym::make_convection({1.0}, 3.0);
  pasym::SolveConfig cfg;
  cfg.horizon = 200.0;
  const auto traj = pasym::solve(nl, {gaussian(grid, 0.1)}, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(pasym::build_Un(traj, nl, 2.0, 1));
}
BENCHMARK(BM_BuildU1)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
