#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pasym/errors.hpp"
#include "pasym/experiment.hpp"
#include "pasym/selftest.hpp"

namespace {

int cmd_run(const std::string& target, const std::string& out, bool snapshots) {
  pasym::ExperimentConfig cfg;
  try {
    cfg = pasym::resolve_config(target);
    if (snapshots) cfg.set("output.snapshots", "true");
  } catch (const std::exception& e) {
    std::cerr << "pasym: " << e.what() << '\n';
    return pasym::kExitGuardOrConfig;
  }
  std::optional<std::filesystem::path> dir;
  if (!out.empty()) dir = out;
  const auto result = pasym::run_experiment(cfg, dir);
  std::cout << pasym::render_report(result.dir);
  std::cout << "artifacts: " << result.dir.string() << '\n';
  if (!result.error.empty()) std::cerr << "pasym: " << result.error << '\n';
  return result.exit_code;
}

int cmd_list(const std::string& filter) {
  for (const auto& e : pasym::list_benchmarks(filter)) {
    std::cout << e.id << "\t" << e.anchor << "\n    " << e.summary << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pasym: large-time asymptotic expansions of dt u = Laplace u + F"};
  app.require_subcommand(1);

  std::string target, out;
  bool snapshots = false;
  auto* run = app.add_subcommand("run", "Run a benchmark id or a config file");
  run->add_option("target", target, "benchmark id or path to a key = value config")->required();
  run->add_option("-o,--out", out, "artifact directory (default runs/<name>)");
  run->add_flag("--snapshots", snapshots, "also write trajectory snapshots");

  pasym::SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite at reduced resolution");
  selftest->add_option("--points", st.points, "grid points per axis for field checks")->check(CLI::PositiveNumber);
  selftest->add_option("--inject-fault", st.inject_fault, "corrupt a component to test the suite (g-alpha-moment)");

  std::string filter;
  auto* list = app.add_subcommand("list", "List registered benchmarks");
  list->add_option("filter", filter, "substring filter on ids");

  std::string dir;
  auto* report = app.add_subcommand("report", "Print the report of an artifact directory");
  report->add_option("dir", dir, "artifact directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(target, out, snapshots);
    if (*selftest) return pasym::report_selftest(std::cout, pasym::run_selftest(st));
    if (*list) return cmd_list(filter);
    if (*report) {
      std::cout << pasym::render_report(dir);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "pasym: " << e.what() << '\n';
    return pasym::kExitGuardOrConfig;
  }
  return 0;
}
