#include "fogsim/harness/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fogsim/error.hpp"

namespace fogsim::harness {

namespace {

using scenario::ScenarioConfig;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::kInvalidValue,
              "'" + std::string(value) + "' for " + std::string(key) + ": " + std::string(why));
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(key, v, "not a number");
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  if (!v.empty() && v.front() == '-') bad_value(key, v, "must be non-negative");
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(key, v, "not an unsigned integer");
  return out;
}

std::uint32_t to_u32(std::string_view key, std::string_view v) {
  const auto x = to_u64(key, v);
  if (x > 0xffffffffULL) bad_value(key, v, "out of range");
  return static_cast<std::uint32_t>(x);
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v, "expected true or false");
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Field {
  std::string name;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define FOGSIM_DOUBLE(name, member)                                                              \
  Field{name, [](ScenarioConfig& c, std::string_view v) { c.member = to_double(name, v); },      \
        [](const ScenarioConfig& c) { return fmt(c.member); }}
#define FOGSIM_U32(name, member)                                                                 \
  Field{name, [](ScenarioConfig& c, std::string_view v) { c.member = to_u32(name, v); },         \
        [](const ScenarioConfig& c) { return std::to_string(c.member); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      FOGSIM_U32("n_terminals", n_terminals),
      FOGSIM_U32("n_fog", n_fog),
      FOGSIM_U32("n_fnc", n_fnc),
      FOGSIM_DOUBLE("arena_diameter_m", arena_diameter_m),
      FOGSIM_DOUBLE("query_range_m", query_range_m),
      FOGSIM_DOUBLE("request_rate", request_rate),
      FOGSIM_U32("n_requests", n_requests),
      FOGSIM_DOUBLE("sim_duration", sim_duration),
      Field{"architecture",
            [](ScenarioConfig& c, std::string_view v) {
              auto a = scenario::parse_architecture(v);
              if (!a) bad_value("architecture", v, "expected traditional or coordinated");
              c.architecture = *a;
            },
            [](const ScenarioConfig& c) { return std::string(scenario::to_string(c.architecture)); }},
      FOGSIM_DOUBLE("base_ms", latency.base_ms),
      FOGSIM_DOUBLE("prop_ms_per_m", latency.prop_ms_per_m),
      FOGSIM_DOUBLE("proc_ms_per_unit", latency.proc_ms_per_unit),
      FOGSIM_DOUBLE("cloud_latency_ms", cloud_latency_ms),
      FOGSIM_DOUBLE("backhaul_factor", backhaul_factor),
      FOGSIM_DOUBLE("report_period_ms", report_period_ms),
      FOGSIM_DOUBLE("aggregation_timeout_ms", aggregation_timeout_ms),
      FOGSIM_DOUBLE("terminal_capacity", terminal_capacity),
      FOGSIM_DOUBLE("fog_capacity", fog_capacity),
      FOGSIM_DOUBLE("fog_job_rate", fog_job_rate),
      FOGSIM_DOUBLE("fnc_capacity", fnc_capacity),
      FOGSIM_DOUBLE("charge_rate", charge_rate),
      FOGSIM_DOUBLE("eval_jitter", eval_jitter),
      FOGSIM_DOUBLE("eval_queue_factor", eval_queue_factor),
      FOGSIM_U32("initial_queue_max", initial_queue_max),
      Field{"migration_enabled",
            [](ScenarioConfig& c, std::string_view v) { c.migration_enabled = to_bool("migration_enabled", v); },
            [](const ScenarioConfig& c) { return std::string(c.migration_enabled ? "true" : "false"); }},
      FOGSIM_DOUBLE("telemetry_period_ms", telemetry_period_ms),
      FOGSIM_DOUBLE("t_upper_ms", t_upper_ms),
      FOGSIM_DOUBLE("ewma_alpha", ewma_alpha),
      FOGSIM_DOUBLE("complaint_factor", complaint_factor),
      FOGSIM_DOUBLE("migration_backoff_ms", migration_backoff_ms),
      FOGSIM_DOUBLE("speed_mps", speed_mps),
      FOGSIM_DOUBLE("mobility_step_ms", mobility_step_ms),
      FOGSIM_DOUBLE("w_dist", weights.w_dist),
      FOGSIM_DOUBLE("w_wait", weights.w_wait),
      Field{"seed", [](ScenarioConfig& c, std::string_view v) { c.seed = to_u64("seed", v); },
            [](const ScenarioConfig& c) { return std::to_string(c.seed); }},
      Field{"run_seed", [](ScenarioConfig& c, std::string_view v) { c.run_seed = to_u64("run_seed", v); },
            [](const ScenarioConfig& c) { return std::to_string(c.run_seed); }},
  };
  return table;
}

#undef FOGSIM_DOUBLE
#undef FOGSIM_U32

}  // namespace

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.name == key) {
      f.set(config, value);
      return;
    }
  }
  throw Error(ErrorCode::kUnknownKey, "'" + std::string(key) + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& f : fields()) out.push_back(f.name);
  return out;
}

std::string format_config(const ScenarioConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += f.name + " = " + f.get(config) + "\n";
  return out;
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::kParseError, where + "empty key or value");
    }
    try {
      set_config_value(base, key, value);
    } catch (const Error& e) {
      // Re-raise with the line number attached.
      std::string msg = e.what();
      const auto colon = msg.find(": ");
      throw Error(e.code(), where + (colon == std::string::npos ? msg : msg.substr(colon + 2)));
    }
  }
  try {
    base.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidValue, std::string(e.what()));
  }
  return base;
}

ScenarioConfig load_config(const std::filesystem::path& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace fogsim::harness
