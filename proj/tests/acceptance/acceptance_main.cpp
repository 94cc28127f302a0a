// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../exactly_once.hpp"
#include "../scenario_oracle.hpp"
#include "fogsim/error.hpp"
#include "fogsim/fognode/migration.hpp"
#include "fogsim/harness/metrics.hpp"
#include "fogsim/harness/plot_data.hpp"
#include "fogsim/harness/sweep.hpp"
#include "fogsim/sim/event_queue.hpp"

using namespace fogsim;
using harness::SweepVariable;
using scenario::Architecture;

namespace {

constexpr std::uint64_t kBaseSeed = 1;
constexpr std::uint32_t kReps = 10;
constexpr double kSmallRangeRelTol = 0.15;
constexpr int kFamiliesRequired = 9;
constexpr int kOracleInstances = 100;
constexpr std::uint64_t kStreamEvents = 1000;
constexpr std::size_t kQueueEvents = 10000;

struct Verdict {
  bool pass = false;
  std::string detail;
};

harness::MetricsTable sweep(SweepVariable v) {
  auto spec = harness::default_sweep(v);
  spec.repetitions = kReps;
  spec.base.seed = kBaseSeed;
  return harness::run_sweep(spec);
}

// mean[value][arch] averaged over repetitions
std::map<double, std::map<Architecture, double>> averaged(const harness::MetricsTable& t) {
  std::map<double, std::map<Architecture, double>> out;
  for (const auto& s : harness::emit_plot_data(t)) {
    for (const auto& p : s.points) out[p.value][s.architecture] = p.mean_latency_ms;
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

Verdict range_trend() {
  const auto t = sweep(SweepVariable::kQueryRange);
  const auto values = harness::default_values(SweepVariable::kQueryRange);
  // family = repetition; per family one run per (value, arch)
  std::map<std::pair<std::uint32_t, double>, std::map<Architecture, std::optional<double>>> cell;
  const std::size_t per_value = static_cast<std::size_t>(kReps) * 2;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto rep = static_cast<std::uint32_t>((i % per_value) / 2);
    cell[{rep, t.rows[i].value}][t.rows[i].architecture] = t.rows[i].mean_latency_ms;
  }
  int good = 0;
  std::string bad;
  for (std::uint32_t rep = 0; rep < kReps; ++rep) {
    auto get = [&](double v, Architecture a) { return cell[{rep, v}][a]; };
    bool ok = true;
    for (double v : {values[values.size() - 2], values.back()}) {
      const auto tr = get(v, Architecture::kTraditional), co = get(v, Architecture::kCoordinated);
      ok = ok && tr && co && *co <= *tr;
    }
    const auto tl = get(values.back(), Architecture::kTraditional), cl = get(values.back(), Architecture::kCoordinated);
    ok = ok && tl && cl && *tl - *cl > 0.0;
    const auto ts = get(values.front(), Architecture::kTraditional), cs = get(values.front(), Architecture::kCoordinated);
    ok = ok && ts && cs && std::abs(*ts - *cs) / std::max(*ts, *cs) <= kSmallRangeRelTol;
    if (ok) {
      ++good;
    } else {
      bad += " " + std::to_string(rep);
    }
  }
  return {good >= kFamiliesRequired,
          std::to_string(good) + "/" + std::to_string(kReps) + " families" + (bad.empty() ? "" : ", failing:" + bad)};
}

Verdict requests_trend() {
  const auto m = averaged(sweep(SweepVariable::kRequests));
  bool mono = true;
  std::string trad, coord;
  std::optional<double> pt, pc;
  for (const auto& [v, by] : m) {
    const double t = by.at(Architecture::kTraditional), c = by.at(Architecture::kCoordinated);
    if (pt && t < *pt) mono = false;
    if (pc && c < *pc) mono = false;
    pt = t;
    pc = c;
    trad += " " + fmt(t);
    coord += " " + fmt(c);
  }
  const auto& lo = m.begin()->second;
  const auto& hi = m.rbegin()->second;
  const double gap_lo = lo.at(Architecture::kTraditional) - lo.at(Architecture::kCoordinated);
  const double gap_hi = hi.at(Architecture::kTraditional) - hi.at(Architecture::kCoordinated);
  return {mono && gap_hi >= gap_lo,
          "traditional" + trad + "; coordinated" + coord + "; gap " + fmt(gap_lo) + " -> " + fmt(gap_hi)};
}

Verdict fnc_trend() {
  const auto m = averaged(sweep(SweepVariable::kFnc));
  bool ok = m.size() == 4;
  std::optional<double> prev;
  std::string s;
  for (const auto& [v, by] : m) {
    const double c = by.at(Architecture::kCoordinated);
    if (prev && c > *prev) ok = false;
    prev = c;
    s += " " + fmt(c);
  }
  return {ok, "coordinated" + s};
}

Verdict decision_oracle() {
  const auto t = scenario_check::decision_oracle_sweep(kOracleInstances);
  return {t.instances == kOracleInstances && t.mismatches == 0,
          std::to_string(t.instances) + " instances, " + std::to_string(t.mismatches) + " mismatches, " +
              std::to_string(t.skipped_warmup) + " warm-up runs skipped"};
}

Verdict migration_paths() {
  using fognode::FlowHost;
  using fognode::FlowState;
  using fognode::MigrationPolicy;
  using fognode::MigrationReply;
  using fognode::MigrationStatus;
  using topology::Layer;
  using topology::NodeId;
  const NodeId src{Layer::kFog, 0}, b{Layer::kFog, 1}, c{Layer::kFog, 2};
  auto host = [&] {
    FlowHost h(src, fognode::make_chain({"p"}).placed_on(src));
    h.install("f");
    h.offer("f", 1, 1.0);
    return h;
  };
  struct Script {
    std::vector<NodeId> asked, got_state;
  };
  auto drive = [&](FlowHost& h, double latency, std::vector<NodeId> v, std::function<MigrationReply(NodeId)> reply,
                   Script& sc) {
    return fognode::migration_source(
        h, "f", latency, MigrationPolicy{8.0, std::move(v), 0},
        [&](NodeId n) {
          sc.asked.push_back(n);
          return reply(n);
        },
        [&](NodeId n, const FlowState& s) {
          if (s.cursor == 1) sc.got_state.push_back(n);
        });
  };
  auto warned = [](const fognode::MigrationOutcome& o) {
    return o.warning && o.warning->rfind(std::string(fognode::kCannotMigrate), 0) == 0;
  };
  std::string failed;
  {  // (a)
    auto h = host();
    Script sc;
    const auto o = drive(h, 5.0, {b, c}, [](NodeId) { return MigrationReply::kAccept; }, sc);
    if (!(o.status == MigrationStatus::kNotNeeded && sc.asked.empty() && h.resident("f") && !h.frozen("f") &&
          o.remaining == std::vector<NodeId>{b, c} && !o.warning))
      failed += " a";
  }
  {  // (b)
    auto h = host();
    Script sc;
    const auto o = drive(h, 20.0, {b, c}, [](NodeId) { return MigrationReply::kAccept; }, sc);
    if (!(o.status == MigrationStatus::kMigrated && o.target == b && o.attempts == 1 && sc.asked == std::vector{b} &&
          sc.got_state == std::vector{b} && o.remaining == std::vector{c} && !h.resident("f") && !o.warning))
      failed += " b";
  }
  {  // (c)
    auto h = host();
    Script sc;
    const auto o = drive(
        h, 20.0, {b, c}, [&](NodeId n) { return n == b ? MigrationReply::kReject : MigrationReply::kAccept; }, sc);
    if (!(o.status == MigrationStatus::kMigrated && o.target == c && o.attempts == 2 &&
          sc.asked == std::vector{b, c} && sc.got_state == std::vector{c} && o.remaining.empty() &&
          !h.resident("f") && !o.warning))
      failed += " c";
  }
  {  // (d) all reject, then empty V
    auto h = host();
    Script sc;
    const auto o = drive(h, 20.0, {b, c}, [](NodeId) { return MigrationReply::kReject; }, sc);
    auto h2 = host();
    Script sc2;
    const auto e = drive(h2, 20.0, {}, [](NodeId) { return MigrationReply::kAccept; }, sc2);
    if (!(o.status == MigrationStatus::kFailed && o.attempts == 2 && sc.asked == std::vector{b, c} &&
          sc.got_state.empty() && o.remaining.empty() && warned(o) && h.resident("f") && !h.frozen("f") &&
          e.status == MigrationStatus::kFailed && e.attempts == 0 && sc2.asked.empty() && warned(e) &&
          h2.resident("f")))
      failed += " d";
  }
  return {failed.empty(), failed.empty() ? "paths a-d conform" : "failing paths:" + failed};
}

Verdict exactly_once() {
  std::vector<stream_check::Delivery> in;
  for (std::uint64_t s = 1; s <= kStreamEvents; ++s) in.push_back({s, 0.5 * static_cast<double>(s % 31)});
  const auto plain = stream_check::run_without_migration(in);
  const auto moved = stream_check::run_with_migration(in, kStreamEvents / 2, 25);
  const auto jitter = stream_check::jittered_deliveries(kStreamEvents, 17);
  const auto jplain = stream_check::run_without_migration(jitter);
  const auto jmoved = stream_check::run_with_migration(jitter, jitter.size() / 2, 25);
  std::vector<std::uint64_t> expect(kStreamEvents);
  for (std::uint64_t i = 0; i < kStreamEvents; ++i) expect[i] = i + 1;
  const bool ok = plain.processed == expect && moved.processed == plain.processed &&
                  moved.final_state.operator_states == plain.final_state.operator_states &&
                  jplain.processed == expect && jmoved.processed == expect &&
                  jmoved.final_state.operator_states == jplain.final_state.operator_states;
  return {ok, std::to_string(moved.processed.size()) + " events processed after migration"};
}

Verdict determinism() {
  auto once = [] {
    std::ostringstream out;
    harness::write_csv(sweep(SweepVariable::kQueryRange), out);
    return out.str();
  };
  const auto a = once();
  const auto b = once();
  return {a == b && !a.empty(), std::to_string(a.size()) + " bytes per run"};
}

Verdict engine() {
  sim::EventQueue<std::uint32_t, int> q;
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> tick(0, 999);
  for (std::size_t i = 0; i < kQueueEvents; ++i) q.schedule(sim::SimTime{static_cast<double>(tick(gen))}, 0, 0);
  std::vector<std::pair<double, std::uint64_t>> seen;
  q.run([&](auto&, const auto& ev) { seen.emplace_back(ev.fire_at.ms, ev.seq); });
  const bool ordered = seen.size() == kQueueEvents && std::is_sorted(seen.begin(), seen.end());
  bool rejected = false;
  try {
    q.schedule(sim::SimTime{q.now().ms - 1.0}, 0, 0);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kSchedulingInPast;
  }
  return {ordered && rejected, std::to_string(seen.size()) + " events in order, past schedule " +
                                   (rejected ? "rejected" : "accepted")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 range trend", range_trend},
      {"2 request-load trend", requests_trend},
      {"3 fnc-count trend", fnc_trend},
      {"4 decision oracle", decision_oracle},
      {"5 migration paths", migration_paths},
      {"6 exactly-once under migration", exactly_once},
      {"7 sweep determinism", determinism},
      {"8 event engine order", engine},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s criterion %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
