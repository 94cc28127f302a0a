#include "fogsim/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "fogsim/error.hpp"
#include "fogsim/scenario/simulation.hpp"
#include "fogsim/sim/rng.hpp"

namespace fogsim::harness {

std::string_view variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::kQueryRange: return "query_range_m";
    case SweepVariable::kRequests: return "n_requests";
    case SweepVariable::kFnc: return "n_fnc";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view text) {
  if (text == "range" || text == "query_range_m") return SweepVariable::kQueryRange;
  if (text == "requests" || text == "n_requests") return SweepVariable::kRequests;
  if (text == "fnc" || text == "n_fnc") return SweepVariable::kFnc;
  return std::nullopt;
}

std::vector<double> default_values(SweepVariable v) {
  switch (v) {
    case SweepVariable::kQueryRange: return {250, 500, 1000, 1500, 2000};
    case SweepVariable::kRequests: return {20, 40, 80, 160, 320};
    case SweepVariable::kFnc: return {1, 2, 3, 4};
  }
  return {};
}

void SweepSpec::validate() const {
  if (values.empty()) throw Error(ErrorCode::kInvalidValue, "sweep values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw Error(ErrorCode::kInvalidValue, "sweep values must be strictly increasing");
    }
  }
  if (repetitions < 1) throw Error(ErrorCode::kInvalidValue, "repetitions must be >= 1");
  if (architectures.empty()) throw Error(ErrorCode::kInvalidValue, "no architecture selected");
  if (variable != SweepVariable::kQueryRange) {
    for (double v : values) {
      if (v < 0 || v != std::floor(v)) {
        throw Error(ErrorCode::kInvalidValue, std::string(variable_name(variable)) + " values must be whole numbers");
      }
    }
  }
}

SweepSpec default_sweep(SweepVariable v, const scenario::ScenarioConfig& base) {
  SweepSpec s;
  s.variable = v;
  s.values = default_values(v);
  s.base = base;
  return s;
}

std::uint64_t family_seed(std::uint64_t base_seed, std::uint32_t repetition) {
  return sim::derive_seed({base_seed, 0x66616dULL, repetition});
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t value_index, std::uint32_t repetition,
                        scenario::Architecture arch) {
  return sim::derive_seed({base_seed, value_index, repetition, static_cast<std::uint64_t>(arch)});
}

scenario::ScenarioConfig cell_config(const SweepSpec& spec, std::size_t value_index,
                                     std::uint32_t repetition, scenario::Architecture arch) {
  scenario::ScenarioConfig c = spec.base;
  const double v = spec.values.at(value_index);
  switch (spec.variable) {
    case SweepVariable::kQueryRange: c.query_range_m = v; break;
    case SweepVariable::kRequests: c.n_requests = static_cast<std::uint32_t>(v); break;
    case SweepVariable::kFnc: c.n_fnc = static_cast<std::uint32_t>(v); break;
  }
  c.architecture = arch;
  c.seed = family_seed(spec.base.seed, repetition);
  c.run_seed = cell_seed(spec.base.seed, value_index, repetition, arch);
  return c;
}

MetricsTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Cell {
    std::size_t value_index;
    std::uint32_t repetition;
    scenario::Architecture arch;
  };
  std::vector<Cell> cells;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    for (std::uint32_t r = 0; r < spec.repetitions; ++r) {
      for (auto a : spec.architectures) cells.push_back({vi, r, a});
    }
  }

  MetricsTable table;
  table.rows.resize(cells.size());
  const std::string var(variable_name(spec.variable));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& cell = cells[i];
      const auto cfg = cell_config(spec, cell.value_index, cell.repetition, cell.arch);
      scenario::RunSummary summary;
      summary.architecture = cell.arch;
      try {
        summary = scenario::simulate(cfg).summary();
      } catch (const Error&) {
        // Failed cell: keep the row, report nothing completed.
      }
      table.rows[i] = make_row(i, var, spec.values[cell.value_index], cfg.run_seed, summary);
    }
  };

  unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return table;
}

}  // namespace fogsim::harness
