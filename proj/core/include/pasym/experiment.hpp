#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pasym/config.hpp"
#include "pasym/dynamics.hpp"
#include "pasym/field.hpp"
#include "pasym/rates.hpp"
#include "pasym/solver.hpp"

namespace pasym {

struct BenchmarkEntry {
  std::string id;
  /// Theorem the benchmark reproduces.
  std::string anchor;
  std::string summary;
  ExperimentConfig config;
};

const std::vector<BenchmarkEntry>& benchmark_registry();

/// Entries whose id contains `filter`; an empty filter lists everything.
std::vector<BenchmarkEntry> list_benchmarks(const std::string& filter = "");

/// A registered benchmark id, or a config file (optionally based on a
/// `benchmark = <id>` entry).
ExperimentConfig resolve_config(const std::string& id_or_path);

Nonlinearity make_nonlinearity(const ExperimentConfig& cfg);
GridPtr make_grid(const ExperimentConfig& cfg);
std::vector<Field> make_initial_data(const ExperimentConfig& cfg, const GridPtr& grid);
/// ψ for chemotaxis runs, nullopt otherwise.
std::optional<Field> make_chemical(const ExperimentConfig& cfg, const GridPtr& grid);
SolveConfig make_solve_config(const ExperimentConfig& cfg);
FitWindow make_window(const ExperimentConfig& cfg);

struct VerdictRow {
  std::string benchmark;
  Variant variant = Variant::Un;
  int n = 0;
  double q = 1.0;
  int j = 0;
  std::optional<double> weight;
  RateVerdict verdict;
};

inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitGuardOrConfig = 2;

struct RunResult {
  int exit_code = 0;
  std::filesystem::path dir;
  std::vector<VerdictRow> verdicts;
  std::string error;
};

/// solve → expand → rates → artifacts. Numerical guard breaches are caught
/// and reported with exit code 2.
RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Human-readable summary rebuilt from the manifest and verdicts.csv.
std::string render_report(const std::filesystem::path& dir);

std::string format_number(double v);

}  // namespace pasym
