#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/scenario/config.hpp"
#include "fogsim/scenario/simulation.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::harness {

struct MetricsRow {
  std::uint64_t run_id = 0;
  scenario::Architecture architecture = scenario::Architecture::kCoordinated;
  std::string variable = "none";  // swept variable name
  double value = 0.0;             // swept value
  std::uint64_t seed = 0;
  std::optional<double> mean_latency_ms;  // absent when nothing completed
  std::optional<double> p95_latency_ms;
  std::uint64_t completed = 0;
  std::uint64_t timed_out = 0;
  std::uint64_t messages_total = 0;
  std::uint64_t migrations = 0;

  bool operator==(const MetricsRow&) const = default;
};

struct MetricsTable {
  std::vector<MetricsRow> rows;

  bool operator==(const MetricsTable&) const = default;
};

MetricsRow make_row(std::uint64_t run_id, const std::string& variable, double value,
                    std::uint64_t seed, const scenario::RunSummary& summary);

inline constexpr const char* kMetricsHeader =
    "run_id,architecture,variable,value,seed,mean_latency_ms,p95_latency_ms,completed,timed_out,"
    "messages_total,migrations";

// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double v);

void write_csv(const MetricsTable& table, std::ostream& out);
// Returns the number of data rows written. Throws IoError.
std::size_t emit_csv(const MetricsTable& table, const std::filesystem::path& path);

MetricsTable parse_csv(std::istream& in);
MetricsTable read_csv(const std::filesystem::path& path);

// Side outputs of a single run.
void write_topology_csv(const std::vector<topology::NodeRecord>& nodes, const std::filesystem::path& path);
void write_requests_csv(const scenario::RunResult& run, const std::filesystem::path& path);
void write_migrations_csv(const scenario::RunResult& run, const std::filesystem::path& path);

}  // namespace fogsim::harness
