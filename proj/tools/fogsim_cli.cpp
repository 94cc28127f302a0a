#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogsim/error.hpp"
#include "fogsim/harness/config_file.hpp"
#include "fogsim/harness/metrics.hpp"
#include "fogsim/harness/plot_data.hpp"
#include "fogsim/harness/sweep.hpp"
#include "fogsim/scenario/simulation.hpp"

namespace fs = std::filesystem;
using namespace fogsim;

namespace {

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_filename(out.stem().string() + "_" + suffix + ".csv");
  return p;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

scenario::ScenarioConfig base_config(const std::string& config_path, const std::vector<std::string>& sets) {
  scenario::ScenarioConfig cfg;
  if (!config_path.empty()) cfg = harness::load_config(config_path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParseError, "--set expects key=value: " + kv);
    harness::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

std::vector<scenario::Architecture> parse_arches(const std::string& text) {
  if (text == "both") return {scenario::Architecture::kTraditional, scenario::Architecture::kCoordinated};
  auto a = scenario::parse_architecture(text);
  if (!a) throw Error(ErrorCode::kInvalidArgument, "unknown architecture '" + text + "'");
  return {*a};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fog computing simulator for coordinated EV charging"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string arch = "both";
  std::string out = "results/metrics.csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario config file (key = value)");
    sub->add_option("--set", sets, "Override a config key, key=value (repeatable)");
    sub->add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s; seed_given = true; },
                                            "Base seed");
    sub->add_option("--arch", arch, "traditional, coordinated or both")->capture_default_str();
    sub->add_option("--out", out, "Metrics CSV path")->capture_default_str();
  };

  auto* run = app.add_subcommand("run", "Run one scenario");
  add_common(run);

  auto* sweep = app.add_subcommand("sweep", "Sweep one variable over repetitions");
  add_common(sweep);
  std::string variable = "range";
  std::vector<double> values;
  std::uint32_t reps = 10;
  unsigned threads = 0;
  sweep->add_option("--sweep", variable, "range, requests or fnc")->capture_default_str();
  sweep->add_option("--values", values, "Swept values (default depends on the variable)");
  sweep->add_option("--reps", reps, "Repetitions per value")->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();

  auto* plot = app.add_subcommand("plot-data", "Aggregate a metrics CSV into plot series");
  std::string in_path;
  std::string plot_out;
  plot->add_option("input", in_path, "Metrics CSV")->required();
  plot->add_option("--out", plot_out, "Plot CSV path (default: <input>_plot.csv)");

  auto* keys = app.add_subcommand("keys", "List config keys with their defaults");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*keys) {
      std::cout << harness::format_config(scenario::ScenarioConfig{});
      return 0;
    }

    if (*plot) {
      const auto table = harness::read_csv(in_path);
      const auto series = harness::emit_plot_data(table);
      const fs::path dst = plot_out.empty() ? sibling(in_path, "plot") : fs::path(plot_out);
      ensure_parent(dst);
      harness::write_plot_csv(series, dst);
      for (const auto& s : series) {
        for (const auto& p : s.points) {
          std::cout << scenario::to_string(s.architecture) << ' ' << s.variable << '=' << p.value
                    << " mean=" << p.mean_latency_ms << " sd=" << p.std_latency_ms << " n=" << p.runs << '\n';
        }
      }
      return 0;
    }

    auto cfg = base_config(config_path, sets);
    if (seed_given) cfg.seed = seed;
    const fs::path out_path(out);
    ensure_parent(out_path);

    if (*run) {
      harness::MetricsTable table;
      std::uint64_t id = 0;
      for (auto a : parse_arches(arch)) {
        cfg.architecture = a;
        const auto result = scenario::simulate(cfg);
        table.rows.push_back(harness::make_row(id++, "none", 0.0, cfg.effective_run_seed(), result.summary()));
        const std::string tag(scenario::to_string(a));
        harness::write_topology_csv(result.topology, sibling(out_path, "topology"));
        harness::write_requests_csv(result, sibling(out_path, "requests_" + tag));
        harness::write_migrations_csv(result, sibling(out_path, "migrations_" + tag));
      }
      harness::write_csv(table, std::cout);
      harness::emit_csv(table, out_path);
      return 0;
    }

    auto var = harness::parse_sweep_variable(variable);
    if (!var) throw Error(ErrorCode::kInvalidArgument, "unknown sweep variable '" + variable + "'");
    auto spec = harness::default_sweep(*var, cfg);
    if (!values.empty()) spec.values = values;
    spec.repetitions = reps;
    spec.threads = threads;
    spec.architectures = parse_arches(arch);
    const auto table = harness::run_sweep(spec);
    const auto n = harness::emit_csv(table, out_path);
    const auto series = harness::emit_plot_data(table);
    harness::write_plot_csv(series, sibling(out_path, "plot"));
    std::cout << "wrote " << n << " rows to " << out_path.string() << '\n';
    for (const auto& s : series) {
      for (const auto& p : s.points) {
        std::cout << scenario::to_string(s.architecture) << ' ' << s.variable << '=' << p.value
                  << " mean=" << p.mean_latency_ms << " sd=" << p.std_latency_ms << " n=" << p.runs << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
