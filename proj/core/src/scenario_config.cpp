#include "fogsim/scenario/config.hpp"

#include "fogsim/error.hpp"
#include "fogsim/sim/rng.hpp"

namespace fogsim::scenario {

std::string_view to_string(Architecture arch) {
  return arch == Architecture::kTraditional ? "traditional" : "coordinated";
}

std::optional<Architecture> parse_architecture(std::string_view text) {
  if (text == "traditional") return Architecture::kTraditional;
  if (text == "coordinated") return Architecture::kCoordinated;
  return std::nullopt;
}

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(ErrorCode::kInvalidValue, std::string(field) + " " + rule);
}

}  // namespace

void ScenarioConfig::validate() const {
  require(arena_diameter_m > 0.0, "arena_diameter_m", "must be > 0");
  require(query_range_m > 0.0, "query_range_m", "must be > 0");
  require(request_rate >= 0.0, "request_rate", "must be >= 0");
  require(sim_duration > 0.0, "sim_duration", "must be > 0");
  latency.validate();
  require(cloud_latency_ms >= 0.0, "cloud_latency_ms", "must be >= 0");
  require(report_period_ms > 0.0, "report_period_ms", "must be > 0");
  require(aggregation_timeout_ms > 0.0, "aggregation_timeout_ms", "must be > 0");
  require(terminal_capacity > 0.0, "terminal_capacity", "must be > 0");
  require(fog_capacity > 0.0, "fog_capacity", "must be > 0");
  require(fog_job_rate > 0.0, "fog_job_rate", "must be > 0");
  require(fnc_capacity > 0.0, "fnc_capacity", "must be > 0");
  require(charge_rate > 0.0, "charge_rate", "must be > 0");
  require(backhaul_factor >= 0.0, "backhaul_factor", "must be >= 0");
  require(eval_queue_factor >= 0.0, "eval_queue_factor", "must be >= 0");
  require(eval_jitter >= 0.0 && eval_jitter < 1.0, "eval_jitter", "must be in [0, 1)");
  require(telemetry_period_ms > 0.0, "telemetry_period_ms", "must be > 0");
  require(t_upper_ms > 0.0, "t_upper_ms", "must be > 0");
  require(ewma_alpha > 0.0 && ewma_alpha <= 1.0, "ewma_alpha", "must be in (0, 1]");
  require(complaint_factor > 0.0, "complaint_factor", "must be > 0");
  require(migration_backoff_ms >= 0.0, "migration_backoff_ms", "must be >= 0");
  require(speed_mps >= 0.0, "speed_mps", "must be >= 0");
  require(mobility_step_ms > 0.0, "mobility_step_ms", "must be > 0");
  weights.validate();
}

std::uint64_t ScenarioConfig::effective_run_seed() const {
  return run_seed != 0 ? run_seed : sim::derive_seed({seed, static_cast<std::uint64_t>(architecture), 0x6a6974ULL});
}

}  // namespace fogsim::scenario
