#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fogsim/error.hpp"
#include "fogsim/harness/config_file.hpp"
#include "fogsim/harness/metrics.hpp"
#include "fogsim/harness/plot_data.hpp"
#include "fogsim/harness/sweep.hpp"
#include "oracles.hpp"

using namespace fogsim::harness;
using fogsim::Error;
using fogsim::ErrorCode;
using fogsim::scenario::Architecture;
using fogsim::scenario::ScenarioConfig;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

SweepSpec quick_spec(std::vector<double> values, std::uint32_t reps) {
  SweepSpec s;
  s.variable = SweepVariable::kQueryRange;
  s.values = std::move(values);
  s.repetitions = reps;
  s.base.sim_duration = 30.0;
  s.base.seed = 5;
  s.threads = 2;
  return s;
}

MetricsRow row(Architecture a, double value, std::optional<double> mean, std::string var = "query_range_m") {
  MetricsRow r;
  r.architecture = a;
  r.variable = std::move(var);
  r.value = value;
  r.mean_latency_ms = mean;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fogsim_test_" + name);
}

}  // namespace

TEST(ConfigFile, EmptyTextGivesDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.n_terminals, 20u);
  EXPECT_EQ(c.n_fog, 10u);
  EXPECT_EQ(c.n_fnc, 2u);
  EXPECT_DOUBLE_EQ(c.arena_diameter_m, 2000.0);
}

TEST(ConfigFile, SetsValuesAndComments) {
  const auto c = parse_config("# header\n\nn_fnc = 4   # four\nbase_ms=2.5\narchitecture = traditional\n");
  EXPECT_EQ(c.n_fnc, 4u);
  EXPECT_DOUBLE_EQ(c.latency.base_ms, 2.5);
  EXPECT_EQ(c.architecture, Architecture::kTraditional);
  EXPECT_EQ(c.n_fog, 10u);
}

TEST(ConfigFile, Errors) {
  EXPECT_EQ(code_of([] { parse_config("n_fog = -1\n"); }), ErrorCode::kInvalidValue);
  EXPECT_EQ(code_of([] { parse_config("n_fog = ten\n"); }), ErrorCode::kInvalidValue);
  EXPECT_EQ(code_of([] { parse_config("colour = red\n"); }), ErrorCode::kUnknownKey);
  EXPECT_EQ(code_of([] { parse_config("query_range_m = -5\n"); }), ErrorCode::kInvalidValue);
  try {
    parse_config("n_fog = 3\n\njust words\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ConfigFile, FormatRoundTrip) {
  ScenarioConfig c;
  c.n_fnc = 3;
  c.query_range_m = 1234.5;
  c.weights.w_wait = 0.1 + 0.2;
  c.migration_enabled = false;
  c.seed = 99;
  EXPECT_EQ(format_config(parse_config(format_config(c))), format_config(c));
  const auto back = parse_config(format_config(c));
  EXPECT_EQ(back.n_fnc, 3u);
  EXPECT_EQ(back.weights.w_wait, c.weights.w_wait);
  EXPECT_FALSE(back.migration_enabled);
}

TEST(ConfigFile, EveryKeyIsSettable) {
  for (const auto& key : config_keys()) {
    ScenarioConfig c;
    const std::string text = format_config(c);
    EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
  }
}

TEST(Csv, EmptyTableIsHeaderOnly) {
  const auto path = temp_file("empty.csv");
  EXPECT_EQ(emit_csv(MetricsTable{}, path), 0u);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kMetricsHeader);
  EXPECT_FALSE(std::getline(in, line));
  std::filesystem::remove(path);
}

TEST(Csv, RowsRoundTrip) {
  MetricsTable t;
  t.rows.push_back(row(Architecture::kTraditional, 250, 123.456));
  t.rows.push_back(row(Architecture::kCoordinated, 250, std::nullopt));
  t.rows[0].completed = 7;
  t.rows[1].timed_out = 3;
  t.rows[1].seed = 0xffffffffffffffffULL;
  std::ostringstream out;
  write_csv(t, out);
  std::istringstream lines(out.str());
  std::string l;
  int n = 0;
  while (std::getline(lines, l)) ++n;
  EXPECT_EQ(n, 3);
  std::istringstream in(out.str());
  EXPECT_EQ(parse_csv(in), t);
}

TEST(Csv, BadInputRejected) {
  std::istringstream wrong_header("a,b\n");
  EXPECT_EQ(code_of([&] { parse_csv(wrong_header); }), ErrorCode::kParseError);
  std::istringstream short_row(std::string(kMetricsHeader) + "\n1,traditional\n");
  EXPECT_EQ(code_of([&] { parse_csv(short_row); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { emit_csv(MetricsTable{}, "/nonexistent_dir/x.csv"); }), ErrorCode::kIoError);
}

TEST(Sweep, RowCounts) {
  EXPECT_EQ(run_sweep(quick_spec({500}, 1)).rows.size(), 2u);
  const auto t = run_sweep(quick_spec({250, 500, 1000, 1500, 2000}, 5));
  ASSERT_EQ(t.rows.size(), 50u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(t.rows[i].run_id, i);
    EXPECT_EQ(t.rows[i].variable, "query_range_m");
    EXPECT_EQ(t.rows[i].architecture, i % 2 == 0 ? Architecture::kTraditional : Architecture::kCoordinated);
  }
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  auto spec = quick_spec({500, 1500}, 3);
  const auto a = run_sweep(spec);
  spec.threads = 1;
  EXPECT_EQ(run_sweep(spec), a);
  spec.threads = 7;
  EXPECT_EQ(run_sweep(spec), a);
}

TEST(Sweep, SeedsPairwiseDistinct) {
  const auto t = run_sweep(quick_spec({250, 500, 1000}, 4));
  std::set<std::uint64_t> seeds;
  for (const auto& r : t.rows) seeds.insert(r.seed);
  EXPECT_EQ(seeds.size(), t.rows.size());
}

TEST(Sweep, SharedWorldWithinRepetition) {
  auto spec = quick_spec({500, 1500}, 2);
  for (std::uint32_t rep = 0; rep < 2; ++rep) {
    const auto a = cell_config(spec, 0, rep, Architecture::kTraditional);
    const auto b = cell_config(spec, 1, rep, Architecture::kCoordinated);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_NE(a.run_seed, b.run_seed);
    EXPECT_DOUBLE_EQ(a.query_range_m, 500);
    EXPECT_DOUBLE_EQ(b.query_range_m, 1500);
  }
  EXPECT_NE(family_seed(5, 0), family_seed(5, 1));
}

TEST(Sweep, SpecValidation) {
  auto s = quick_spec({}, 1);
  EXPECT_THROW(s.validate(), Error);
  s = quick_spec({500, 250}, 1);
  EXPECT_THROW(s.validate(), Error);
  s = quick_spec({500}, 0);
  EXPECT_THROW(s.validate(), Error);
  s = quick_spec({1.5}, 1);
  s.variable = SweepVariable::kFnc;
  EXPECT_THROW(s.validate(), Error);
  EXPECT_EQ(parse_sweep_variable("fnc"), SweepVariable::kFnc);
  EXPECT_EQ(parse_sweep_variable("n_requests"), SweepVariable::kRequests);
  EXPECT_FALSE(parse_sweep_variable("speed").has_value());
}

TEST(PlotData, SingleRowHasZeroSpread) {
  MetricsTable t;
  t.rows.push_back(row(Architecture::kCoordinated, 500, 42.0));
  const auto s = emit_plot_data(t);
  ASSERT_EQ(s.size(), 1u);
  ASSERT_EQ(s[0].points.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0].points[0].mean_latency_ms, 42.0);
  EXPECT_DOUBLE_EQ(s[0].points[0].std_latency_ms, 0.0);
  EXPECT_EQ(s[0].points[0].runs, 1u);
}

TEST(PlotData, MeanAndSpreadMatchOracle) {
  const std::vector<double> m{10.0, 12.5, 9.0, 30.25, 11.0};
  MetricsTable t;
  for (double v : m) {
    t.rows.push_back(row(Architecture::kTraditional, 1000, v));
    t.rows.push_back(row(Architecture::kCoordinated, 1000, v / 2));
  }
  t.rows.push_back(row(Architecture::kCoordinated, 1000, std::nullopt));
  t.rows.push_back(row(Architecture::kTraditional, 250, 1.0));
  const auto s = emit_plot_data(t);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].architecture, Architecture::kTraditional);
  ASSERT_EQ(s[0].points.size(), 2u);
  EXPECT_DOUBLE_EQ(s[0].points[0].value, 250);
  const auto& p = s[0].points[1];
  EXPECT_NEAR(p.mean_latency_ms, oracle::mean(m), 1e-12);
  EXPECT_NEAR(p.std_latency_ms, oracle::sample_sd(m), 1e-12);
  EXPECT_EQ(p.runs, 5u);
  EXPECT_EQ(s[1].points.at(0).runs, 5u);
  EXPECT_NEAR(s[1].points.at(0).mean_latency_ms, oracle::mean(m) / 2, 1e-12);
}

TEST(PlotData, MixedVariablesRejected) {
  MetricsTable t;
  t.rows.push_back(row(Architecture::kTraditional, 1, 1.0, "n_fnc"));
  t.rows.push_back(row(Architecture::kTraditional, 1, 1.0, "n_requests"));
  EXPECT_EQ(code_of([&] { emit_plot_data(t); }), ErrorCode::kMixedSweepVariables);
}

TEST(PlotData, EmptyTableGivesNoSeries) { EXPECT_TRUE(emit_plot_data(MetricsTable{}).empty()); }
