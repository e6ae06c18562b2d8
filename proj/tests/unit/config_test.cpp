#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pasym/config.hpp"
#include "pasym/errors.hpp"
#include "pasym/experiment.hpp"

using namespace pasym;

TEST(Config, DefaultsAndTypedGetters) {
  ExperimentConfig c;
  EXPECT_EQ(c.integer("grid.dimension"), 1);
  EXPECT_DOUBLE_EQ(c.number("solver.picard_tol"), 1e-10);
  EXPECT_FALSE(c.flag("output.snapshots"));
  EXPECT_EQ(c.numbers("rates.norms").size(), 3u);
  EXPECT_TRUE(std::isinf(c.numbers("rates.norms")[2]));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(c.set("grid.dimensions", "2"), ConfigError);
  EXPECT_THROW(c.set("grid.points", "many"), ConfigError);
  EXPECT_THROW(c.set("nonlinearity.name", "burgers"), ConfigError);
  EXPECT_THROW(c.get("nope"), ConfigError);
}

TEST(Config, ParseRejectsDuplicatesAndUnknowns) {
  std::istringstream dup("grid.points = 1024\ngrid.points = 2048\n");
  EXPECT_THROW(ExperimentConfig::parse(dup), ConfigError);
  std::istringstream unknown("# comment\nfoo.bar = 1\n");
  EXPECT_THROW(ExperimentConfig::parse(unknown), ConfigError);
  std::istringstream ok("# comment\n\nsolver.horizon = 50\n");
  const auto kv = ExperimentConfig::parse(ok);
  ASSERT_EQ(kv.size(), 1u);
  EXPECT_EQ(kv[0].first, "solver.horizon");
  EXPECT_EQ(kv[0].second, "50");
}

TEST(Config, WriteParseRoundTrip) {
  ExperimentConfig c;
  c.set("initial.mass", "0.5,0.25");
  std::stringstream ss;
  c.write(ss);
  ExperimentConfig back;
  for (const auto& [k, v] : ExperimentConfig::parse(ss)) back.set(k, v);
  EXPECT_EQ(back.entries(), c.entries());
}

TEST(Config, NumberHelpers) {
  EXPECT_TRUE(std::isinf(parse_number("inf")));
  EXPECT_DOUBLE_EQ(parse_number(" 2.5 "), 2.5);
  EXPECT_THROW(parse_number("2.5x"), ConfigError);
  EXPECT_EQ(split_list("1, 2,inf").size(), 3u);
}

TEST(Registry, ContainsTheBenchmarks) {
  std::vector<std::string> ids;
  for (const auto& e : benchmark_registry()) ids.push_back(e.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"heat-shift-k1", "cd-p3-k2", "ks-n1", "sl-p4", "sys-m2"}));
  EXPECT_EQ(list_benchmarks("ks").size(), 1u);
  EXPECT_TRUE(list_benchmarks("nothing-matches").empty());
}

TEST(Registry, ConfigFileLayersOnABenchmark) {
  const auto path = std::filesystem::temp_directory_path() / "pasym_layered.cfg";
  std::ofstream(path) << "benchmark = cd-p3-k2\nsolver.horizon = 20\n";
  const auto c = resolve_config(path.string());
  EXPECT_DOUBLE_EQ(c.number("solver.horizon"), 20.0);
  EXPECT_EQ(c.get("nonlinearity.name"), "convection");
  std::filesystem::remove(path);
  EXPECT_THROW(resolve_config("no-such-benchmark"), ConfigError);
}
