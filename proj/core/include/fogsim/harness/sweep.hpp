#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fogsim/harness/metrics.hpp"
#include "fogsim/scenario/config.hpp"

namespace fogsim::harness {

enum class SweepVariable : std::uint8_t { kQueryRange, kRequests, kFnc };

// Column name: query_range_m, n_requests, n_fnc.
std::string_view variable_name(SweepVariable v);
// Accepts the CLI short names (range, requests, fnc) and the column names.
std::optional<SweepVariable> parse_sweep_variable(std::string_view text);

std::vector<double> default_values(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kQueryRange;
  std::vector<double> values;
  std::uint32_t repetitions = 10;
  scenario::ScenarioConfig base;
  std::vector<scenario::Architecture> architectures{scenario::Architecture::kTraditional,
                                                    scenario::Architecture::kCoordinated};
  unsigned threads = 0;  // 0: hardware concurrency

  // values non-empty and strictly increasing, repetitions >= 1.
  void validate() const;
};

SweepSpec default_sweep(SweepVariable v, const scenario::ScenarioConfig& base = {});

// Topology, workload and mobility come from a per-repetition family seed, so
// every swept value and both architectures see the same world within a
// repetition. The recorded per-cell seed is distinct for every
// (value, repetition, architecture) and drives run-local noise.
std::uint64_t family_seed(std::uint64_t base_seed, std::uint32_t repetition);
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t value_index, std::uint32_t repetition,
                        scenario::Architecture arch);

scenario::ScenarioConfig cell_config(const SweepSpec& spec, std::size_t value_index,
                                     std::uint32_t repetition, scenario::Architecture arch);

// Rows ordered by (value, repetition, architecture) whatever the execution
// order. A run that throws becomes a row with no completions.
MetricsTable run_sweep(const SweepSpec& spec);

}  // namespace fogsim::harness
