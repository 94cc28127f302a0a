#include "fogsim/harness/metrics.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fogsim/error.hpp"

namespace fogsim::harness {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

template <typename T>
T parse_num(const std::string& s, std::size_t line_no) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

MetricsRow make_row(std::uint64_t run_id, const std::string& variable, double value,
                    std::uint64_t seed, const scenario::RunSummary& s) {
  MetricsRow r;
  r.run_id = run_id;
  r.architecture = s.architecture;
  r.variable = variable;
  r.value = value;
  r.seed = seed;
  r.mean_latency_ms = s.mean_latency_ms;
  r.p95_latency_ms = s.p95_latency_ms;
  r.completed = s.completed;
  r.timed_out = s.timed_out;
  r.messages_total = s.messages_total;
  r.migrations = s.migrations;
  return r;
}

void write_csv(const MetricsTable& table, std::ostream& out) {
  out << kMetricsHeader << '\n';
  for (const auto& r : table.rows) {
    out << r.run_id << ',' << scenario::to_string(r.architecture) << ',' << r.variable << ','
        << format_number(r.value) << ',' << r.seed << ',' << opt(r.mean_latency_ms) << ','
        << opt(r.p95_latency_ms) << ',' << r.completed << ',' << r.timed_out << ',' << r.messages_total
        << ',' << r.migrations << '\n';
  }
}

std::size_t emit_csv(const MetricsTable& table, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csv(table, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
  return table.rows.size();
}

MetricsTable parse_csv(std::istream& in) {
  MetricsTable t;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw Error(ErrorCode::kParseError, "line 1: missing or unexpected metrics header");
  }
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 11) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected 11 fields");
    }
    MetricsRow r;
    r.run_id = parse_num<std::uint64_t>(c[0], line_no);
    auto arch = scenario::parse_architecture(c[1]);
    if (!arch) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": bad architecture");
    r.architecture = *arch;
    r.variable = c[2];
    r.value = parse_num<double>(c[3], line_no);
    r.seed = parse_num<std::uint64_t>(c[4], line_no);
    if (!c[5].empty()) r.mean_latency_ms = parse_num<double>(c[5], line_no);
    if (!c[6].empty()) r.p95_latency_ms = parse_num<double>(c[6], line_no);
    r.completed = parse_num<std::uint64_t>(c[7], line_no);
    r.timed_out = parse_num<std::uint64_t>(c[8], line_no);
    r.messages_total = parse_num<std::uint64_t>(c[9], line_no);
    r.migrations = parse_num<std::uint64_t>(c[10], line_no);
    t.rows.push_back(std::move(r));
  }
  return t;
}

MetricsTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_csv(in);
}

void write_topology_csv(const std::vector<topology::NodeRecord>& nodes, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "node_id,layer,x,y\n";
  for (const auto& n : nodes) {
    out << topology::to_string(n.id) << ',' << topology::to_string(n.id.layer) << ','
        << format_number(n.location.x) << ',' << format_number(n.location.y) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_requests_csv(const scenario::RunResult& run, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "request_id,architecture,terminal,issued_at_ms,status,chosen,fanout,results,messages,latency_ms\n";
  for (const auto& r : run.requests) {
    out << r.request_id << ',' << scenario::to_string(run.config.architecture) << ','
        << topology::to_string(r.terminal) << ',' << format_number(r.issued_at.ms) << ','
        << scenario::to_string(r.status) << ',' << (r.chosen ? topology::to_string(*r.chosen) : "") << ','
        << r.fanout << ',' << r.replies << ',' << r.messages << ',' << opt(r.latency_ms()) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_migrations_csv(const scenario::RunResult& run, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "flow_id,source,target,attempts,outcome,trigger_latency_ms,t_upper_ms,at_ms,initiator\n";
  for (const auto& m : run.migrations) {
    out << m.flow_id << ',' << topology::to_string(m.source) << ','
        << (m.target ? topology::to_string(*m.target) : "") << ',' << m.attempts << ','
        << fognode::to_string(m.outcome) << ',' << format_number(m.trigger_latency_ms) << ','
        << format_number(m.t_upper_ms) << ',' << format_number(m.at.ms) << ','
        << (m.terminal_initiated ? "terminal" : "fog") << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace fogsim::harness
