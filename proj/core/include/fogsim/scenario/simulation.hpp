#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/coordinator/messages.hpp"
#include "fogsim/fognode/migration.hpp"
#include "fogsim/scenario/config.hpp"
#include "fogsim/sim/time.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::scenario {

enum class RequestStatus : std::uint8_t { kCompleted, kTimedOut, kNoEligible };

std::string_view to_string(RequestStatus status);

struct RequestRecord {
  coordinator::RequestId request_id = 0;
  topology::NodeId terminal;
  topology::Point2D origin;
  sim::SimTime issued_at;
  std::optional<sim::SimTime> decided_at;  // receipt of the decision at the terminal
  std::optional<topology::NodeId> chosen;
  RequestStatus status = RequestStatus::kTimedOut;
  topology::NodeId coordinator;  // FNC used (coordinated mode only)
  std::uint32_t fanout = 0;      // jobs sent to fog nodes
  std::uint32_t replies = 0;     // results sent back by fog nodes
  std::uint32_t messages = 0;    // every message attributed to this request

  std::optional<double> latency_ms() const;
};

struct MigrationRecord {
  std::string flow_id;
  topology::NodeId source;
  std::optional<topology::NodeId> target;
  std::size_t attempts = 0;
  fognode::MigrationStatus outcome = fognode::MigrationStatus::kNotNeeded;
  double trigger_latency_ms = 0.0;
  double t_upper_ms = 0.0;
  sim::SimTime at;
  bool terminal_initiated = false;
  std::optional<std::string> warning;
};

struct RunSummary {
  Architecture architecture = Architecture::kCoordinated;
  std::uint64_t seed = 0;
  std::optional<double> mean_latency_ms;
  std::optional<double> p95_latency_ms;
  std::size_t completed = 0;
  std::size_t timed_out = 0;  // every request without a decision
  std::uint64_t messages_total = 0;
  std::size_t migrations = 0;
};

struct RunResult {
  ScenarioConfig config;
  std::vector<topology::NodeRecord> topology;
  std::vector<RequestRecord> requests;
  std::vector<MigrationRecord> migrations;
  // Seqs processed per flow, in processing order across all hosts.
  std::map<std::string, std::vector<std::uint64_t>> processed;
  std::map<std::string, std::uint64_t> telemetry_sent;  // last seq issued per flow
  std::uint64_t control_messages = 0;  // status, telemetry, migration, cloud traffic
  std::uint64_t stale_reports = 0;
  std::uint64_t cloud_reports = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t trace_digest = 0;  // hash over the processed (time, seq, target, kind) trace

  RunSummary summary() const;
};

// One full run in the configured architecture.
RunResult simulate(const ScenarioConfig& config);

// Mode-checked entry points; throw InvalidArgument on an architecture mismatch.
RunResult run_traditional(const ScenarioConfig& config);
RunResult run_coordinated(const ScenarioConfig& config);

// Nearest-rank percentile, p in (0, 100]. Empty input gives nullopt.
std::optional<double> percentile(std::vector<double> values, double p);

}  // namespace fogsim::scenario
