#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fogsim/fognode/pile.hpp"
#include "fogsim/sim/latency.hpp"

namespace fogsim::scenario {

enum class Architecture : std::uint8_t { kTraditional, kCoordinated };

std::string_view to_string(Architecture arch);
std::optional<Architecture> parse_architecture(std::string_view text);

// Every knob of one simulation run. Field names double as config-file keys.
struct ScenarioConfig {
  // Population and arena.
  std::uint32_t n_terminals = 20;
  std::uint32_t n_fog = 10;
  std::uint32_t n_fnc = 2;
  double arena_diameter_m = 2000.0;

  // Workload.
  double query_range_m = 1000.0;
  double request_rate = 1.0;      // requests per terminal per virtual minute
  std::uint32_t n_requests = 0;   // > 0: exactly this many requests, overrides request_rate
  double sim_duration = 300.0;    // virtual seconds during which requests are issued
  Architecture architecture = Architecture::kCoordinated;

  // Network.
  sim::LatencyModel latency{};
  double cloud_latency_ms = 50.0;
  double backhaul_factor = 0.25;  // scales propagation on links without a terminal endpoint
  double report_period_ms = 1000.0;
  double aggregation_timeout_ms = 500.0;

  // Node resources.
  double terminal_capacity = 1.0;
  double fog_capacity = 4.0;      // also the charging slots per pile
  double fog_job_rate = 10.0;     // evaluation jobs per virtual second
  double fnc_capacity = 8.0;
  double charge_rate = 240.0;     // charges per virtual hour
  double eval_jitter = 0.1;       // relative spread of evaluation time
  double eval_queue_factor = 0.1; // extra evaluation work per vehicle queued at the pile
  std::uint32_t initial_queue_max = 0;  // piles start with a uniform queue in [0, max]

  // Flow telemetry and migration.
  bool migration_enabled = true;
  double telemetry_period_ms = 1000.0;
  double t_upper_ms = 8.0;
  double ewma_alpha = 0.5;
  double complaint_factor = 2.0;  // terminal complains when RTT > factor * t_upper
  double migration_backoff_ms = 5000.0;

  // Mobility.
  double speed_mps = 15.0;
  double mobility_step_ms = 1000.0;

  fognode::ScoreWeights weights{};

  // Topology, workload and mobility derive from seed; run_seed drives the
  // per-run evaluation jitter (0: derived from seed and architecture).
  std::uint64_t seed = 1;
  std::uint64_t run_seed = 0;

  // Throws InvalidValue naming the offending field.
  void validate() const;

  std::uint64_t effective_run_seed() const;
};

}  // namespace fogsim::scenario
