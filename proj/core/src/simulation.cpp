#include "fogsim/scenario/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <variant>

#include "fogsim/coordinator/coordinator.hpp"
#include "fogsim/coordinator/deployment.hpp"
#include "fogsim/error.hpp"
#include "fogsim/fognode/flow.hpp"
#include "fogsim/fognode/pile.hpp"
#include "fogsim/scenario/mobility.hpp"
#include "fogsim/sim/event_queue.hpp"
#include "fogsim/sim/latency.hpp"
#include "fogsim/sim/rng.hpp"
#include "fogsim/topology/placement.hpp"
#include "fogsim/topology/registry.hpp"

namespace fogsim::scenario {

using coordinator::JobResult;
using coordinator::RequestId;
using coordinator::ServiceRequest;
using fognode::FlowState;
using fognode::MigrationReply;
using fognode::MigrationSession;
using sim::SimTime;
using topology::Layer;
using topology::NodeId;
using topology::Point2D;

std::string_view to_string(RequestStatus status) {
  switch (status) {
    case RequestStatus::kCompleted: return "completed";
    case RequestStatus::kTimedOut: return "timed_out";
    case RequestStatus::kNoEligible: return "no_eligible";
  }
  return "unknown";
}

std::optional<double> RequestRecord::latency_ms() const {
  if (status != RequestStatus::kCompleted || !decided_at) return std::nullopt;
  return (*decided_at - issued_at).ms;
}

std::optional<double> percentile(std::vector<double> values, double p) {
  if (values.empty()) return std::nullopt;
  if (!(p > 0.0 && p <= 100.0)) throw Error(ErrorCode::kInvalidArgument, "percentile out of range");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

RunSummary RunResult::summary() const {
  RunSummary s;
  s.architecture = config.architecture;
  s.seed = config.seed;
  std::vector<double> lat;
  for (const auto& r : requests) {
    s.messages_total += r.messages;
    if (auto l = r.latency_ms()) {
      lat.push_back(*l);
    } else {
      ++s.timed_out;
    }
  }
  s.completed = lat.size();
  if (!lat.empty()) {
    double sum = 0.0;
    for (double v : lat) sum += v;
    s.mean_latency_ms = sum / static_cast<double>(lat.size());
    s.p95_latency_ms = percentile(lat, 95.0);
  }
  for (const auto& m : migrations) {
    if (m.outcome == fognode::MigrationStatus::kMigrated) ++s.migrations;
  }
  return s;
}

namespace {

constexpr std::uint64_t kMobilityStream = 0x6d6f62ULL;
constexpr std::uint64_t kWorkloadStream = 0x776f726bULL;
constexpr std::uint64_t kTelemetryStream = 0x74656cULL;
constexpr std::uint64_t kPileStream = 0x70696c65ULL;
constexpr std::uint64_t kJitterStream = 0x6a6974ULL;
const NodeId kCloud{Layer::kCloud, 0};
const std::string kChargingApp = "ev-charging";
const std::string kTelemetryApp = "ev-telemetry";

// Self-scheduled timers (never cross the network).
struct IssueRequest { std::size_t index; };
struct MobilityTick {};
struct StatusTick {};
struct CloudTick {};
struct TelemetryTick {};
struct ChargeDone {};
struct AggregationTimer { RequestId id; };
struct CollectionTimer { RequestId id; };
struct JobDone { ServiceRequest req; NodeId reply_to; };

// Network messages.
struct RequestMsg { ServiceRequest req; };
struct JobMsg { ServiceRequest req; NodeId reply_to; };
struct ResultMsg { JobResult result; };
struct DecisionMsg { RequestId id; std::optional<NodeId> chosen; bool no_eligible; };
struct StatusReportMsg { topology::NodeStatus status; };
struct CloudReportMsg { std::uint64_t decisions; };
struct TelemetryMsg {
  std::string flow;
  std::uint64_t seq;
  double value;
  SimTime sent_at;
  Point2D terminal_pos;
  double last_rtt_ms;
  NodeId terminal;
  bool forwarded;
};
struct TelemetryAck { std::string flow; std::uint64_t seq; SimTime sent_at; };
struct ComplaintMsg { std::string flow; double rtt_ms; Point2D terminal_pos; NodeId terminal; };
struct StartMigrationMsg { std::string flow; NodeId source; };
struct MigrationReplyMsg { std::string flow; MigrationReply reply; NodeId from; };
struct ObjectStateMsg { FlowState state; NodeId source; NodeId terminal; };
struct MigrationDoneMsg { std::string flow; NodeId host; bool accepted; std::optional<FlowState> returned; };
struct HostChangedMsg { std::string flow; NodeId host; };

using Message = std::variant<IssueRequest, MobilityTick, StatusTick, CloudTick, TelemetryTick, ChargeDone,
                             AggregationTimer, CollectionTimer, JobDone, RequestMsg, JobMsg, ResultMsg,
                             DecisionMsg, StatusReportMsg, CloudReportMsg, TelemetryMsg, TelemetryAck,
                             ComplaintMsg, StartMigrationMsg, MigrationReplyMsg, ObjectStateMsg,
                             MigrationDoneMsg, HostChangedMsg>;

struct Envelope {
  Message msg;
  bool via_network = false;
  NodeId from;
};

using Queue = sim::EventQueue<NodeId, Envelope>;
using Event = Queue::Event;

struct TradPending {
  ServiceRequest req;
  std::set<NodeId> addressed;
  std::vector<JobResult> results;
};

struct Terminal {
  NodeId id;
  MobilityState mob;
  sim::RngStream mob_rng;
  sim::RngStream telemetry_rng;
  std::string flow;
  std::optional<NodeId> serving;
  std::uint64_t next_seq = 1;
  double last_rtt_ms = 0.0;
  std::optional<SimTime> last_complaint;
  std::map<RequestId, TradPending> pending;
};

struct Fog {
  NodeId id;
  Point2D location;
  fognode::PileState pile;
  std::vector<SimTime> slots;  // evaluation slots, busy-until times
  sim::RngStream jitter;
  fognode::FlowHost host;
  std::map<std::string, fognode::LatencyEstimator> ewma;
  std::map<std::string, Point2D> terminal_pos;
  std::map<std::string, NodeId> flow_terminal;
  std::map<std::string, SimTime> backoff_until;
  std::map<std::string, MigrationSession> sessions;
  std::map<std::string, bool> session_terminal_initiated;
  std::map<std::string, NodeId> forward;
  std::map<std::string, NodeId> awaiting;  // accepted incoming flow -> source
  std::map<std::string, std::vector<TelemetryMsg>> awaiting_buffer;
};

struct Fnc {
  coordinator::Coordinator coord;
  std::uint64_t decisions = 0;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg);
  RunResult run();

 private:
  // Topology helpers.
  Point2D location(NodeId id) const;
  double capacity(NodeId id) const;
  Terminal& terminal(NodeId id) { return terminals_.at(id.ordinal); }
  Fog& fog(NodeId id) { return fogs_.at(id.ordinal); }
  Fnc& fnc(NodeId id) { return fncs_.at(id.ordinal); }
  const topology::Registry* registry_for(const Point2D& p) const;
  topology::NodeStatus status_of(const Fog& f) const;

  // Messaging.
  SimTime delay(NodeId from, NodeId to) const;
  void send(NodeId from, NodeId to, Message msg, std::optional<RequestId> rid = std::nullopt);
  void timer(SimTime at, NodeId target, Message msg);
  SimTime now() const { return queue_.now(); }
  bool issuing() const { return now() < duration_; }

  void handle(const Event& ev);

  // Request path.
  void on_issue(NodeId t, std::size_t index);
  void on_request(NodeId fnc_id, const ServiceRequest& req);
  void on_job(NodeId fog_id, const JobMsg& job);
  void on_job_done(NodeId fog_id, const JobDone& job);
  void on_result(NodeId target, const JobResult& result);
  void on_decision(NodeId t, const DecisionMsg& d);
  void finish_traditional(Terminal& term, RequestId id);
  void close_coordinated(NodeId fnc_id, const coordinator::Closure& c);
  void book(NodeId pile);

  // Flow path.
  void on_telemetry_tick(NodeId t);
  void on_telemetry(NodeId fog_id, const TelemetryMsg& m);
  void on_complaint(NodeId fog_id, const ComplaintMsg& m);
  void evaluate_migration(Fog& f, const std::string& flow, double sample_ms, bool terminal_initiated);
  void drive_session(Fog& f, const std::string& flow, const MigrationSession::Action& action);
  void on_start_migration(NodeId fog_id, const StartMigrationMsg& m);
  void on_migration_reply(NodeId fog_id, const MigrationReplyMsg& m);
  void on_object_state(NodeId fog_id, const ObjectStateMsg& m);
  void on_migration_done(NodeId fog_id, const MigrationDoneMsg& m);
  void record_processed(const std::string& flow, const std::vector<std::uint64_t>& seqs);
  void audit(const Fog& f, const MigrationSession& s, bool terminal_initiated);

  ScenarioConfig cfg_;
  topology::Arena arena_;
  SimTime duration_;
  SimTime timeout_;
  Queue queue_;
  std::vector<topology::NodeRecord> nodes_;
  std::vector<Terminal> terminals_;
  std::vector<Fog> fogs_;
  std::vector<Fnc> fncs_;
  std::map<NodeId, std::int64_t> inbound_;
  std::vector<ServiceRequest> workload_;
  std::string charging_substream_prefix_;
  RunResult out_;
};

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg),
      arena_{cfg.arena_diameter_m},
      duration_(SimTime::seconds(cfg.sim_duration)),
      timeout_(SimTime{cfg.aggregation_timeout_ms}) {
  cfg_.validate();
  if (cfg_.architecture == Architecture::kCoordinated && cfg_.n_fnc == 0) {
    throw Error(ErrorCode::kInvalidValue, "coordinated architecture needs at least one FNC");
  }
  out_.config = cfg_;

  topology::LayerProfiles profiles;
  profiles.terminal = {cfg_.terminal_capacity, 0, 10.0};
  profiles.fog = {cfg_.fog_capacity, 0, cfg_.fog_job_rate};
  profiles.fnc = {cfg_.fnc_capacity, 0, 200.0};
  nodes_ = topology::place_nodes({cfg_.n_terminals, cfg_.n_fog, cfg_.n_fnc}, arena_, cfg_.seed, profiles);

  // Init-time deployment by the orchestration servers.
  const coordinator::ApplicationImage telemetry_app{kTelemetryApp, fognode::make_chain({"filter", "aggregate"}),
                                                    Layer::kFog};
  const coordinator::ApplicationImage charging_app{kChargingApp, fognode::make_chain({"score"}), Layer::kFog};
  const auto telemetry_placement = coordinator::deploy_application(telemetry_app, nodes_);
  coordinator::deploy_application(charging_app, nodes_);

  const std::uint64_t run_seed = cfg_.effective_run_seed();
  const auto eval_slots = static_cast<std::size_t>(std::max(1.0, std::floor(cfg_.fog_capacity)));
  for (const auto& rec : nodes_) {
    switch (rec.id.layer) {
      case Layer::kTerminal: {
        sim::RngStream mob_rng(cfg_.seed, sim::derive_seed({kMobilityStream, rec.id.key()}));
        Terminal t{rec.id,
                   {},
                   mob_rng,
                   sim::RngStream(cfg_.seed, sim::derive_seed({kTelemetryStream, rec.id.key()})),
                   kTelemetryApp + "/" + topology::to_string(rec.id),
                   {}, 1, 0.0, {}, {}};
        t.mob.position = rec.location;
        t.mob.waypoint = topology::uniform_in_disk(arena_.radius(), t.mob_rng.uniform(), t.mob_rng.uniform());
        const double d = topology::distance(t.mob.position, t.mob.waypoint);
        if (d > 0.0) {
          t.mob.vx = cfg_.speed_mps * (t.mob.waypoint.x - t.mob.position.x) / d;
          t.mob.vy = cfg_.speed_mps * (t.mob.waypoint.y - t.mob.position.y) / d;
        }
        terminals_.push_back(std::move(t));
        break;
      }
      case Layer::kFog: {
        sim::RngStream pile_rng(cfg_.seed, sim::derive_seed({kPileStream, rec.id.key()}));
        fognode::PileState pile{rec.id, rec.location, 0, cfg_.charge_rate, true};
        if (cfg_.initial_queue_max > 0) {
          pile.queue_len = static_cast<std::uint32_t>(pile_rng.below(cfg_.initial_queue_max + 1ULL));
        }
        fogs_.push_back(Fog{rec.id, rec.location, pile, std::vector<SimTime>(eval_slots, SimTime{}),
                            sim::RngStream(run_seed, sim::derive_seed({kJitterStream, rec.id.key()})),
                            fognode::FlowHost(rec.id, telemetry_placement.at(rec.id).flow),
                            {}, {}, {}, {}, {}, {}, {}, {}, {}});
        break;
      }
      case Layer::kFnc:
        fncs_.push_back(Fnc{coordinator::Coordinator(rec.id, rec.location, timeout_,
                                                     SimTime{cfg_.report_period_ms})});
        break;
      case Layer::kCloud:
        break;
    }
  }

  // Registries start from the deployment-time view of every fog node.
  for (auto& c : fncs_) {
    for (const auto& f : fogs_) c.coord.registry().report_status(status_of(f));
  }

  // Each terminal's telemetry flow starts on the nearest fog node.
  for (auto& t : terminals_) {
    if (fogs_.empty()) continue;
    const Fog* best = &fogs_.front();
    for (const auto& f : fogs_) {
      if (topology::distance(t.mob.position, f.location) < topology::distance(t.mob.position, best->location)) {
        best = &f;
      }
    }
    Fog& host = fog(best->id);
    host.host.install(t.flow);
    host.flow_terminal[t.flow] = t.id;
    host.terminal_pos[t.flow] = t.mob.position;
    t.serving = host.id;
    out_.processed[t.flow];
  }

  // Workload: identical for both architectures under the same seed.
  sim::RngStream wl(cfg_.seed, kWorkloadStream);
  struct Arrival {
    double at_ms;
    std::uint32_t terminal;
  };
  std::vector<Arrival> arrivals;
  if (cfg_.n_terminals > 0) {
    if (cfg_.n_requests > 0) {
      for (std::uint32_t i = 0; i < cfg_.n_requests; ++i) {
        const double at = wl.uniform(0.0, duration_.ms);
        arrivals.push_back({at, static_cast<std::uint32_t>(wl.below(cfg_.n_terminals))});
      }
    } else if (cfg_.request_rate > 0.0) {
      const double per_ms = cfg_.request_rate / 60000.0;
      for (std::uint32_t i = 0; i < cfg_.n_terminals; ++i) {
        sim::RngStream tr = wl.child(i);
        for (double at = tr.exponential(per_ms); at < duration_.ms; at += tr.exponential(per_ms)) {
          arrivals.push_back({at, i});
        }
      }
    }
  }
  std::sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
    return a.at_ms != b.at_ms ? a.at_ms < b.at_ms : a.terminal < b.terminal;
  });
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    ServiceRequest req;
    req.request_id = i;
    req.requester = {Layer::kTerminal, arrivals[i].terminal};
    req.query_range_m = cfg_.query_range_m;
    req.issued_at = SimTime{arrivals[i].at_ms};
    workload_.push_back(req);
    RequestRecord rec;
    rec.request_id = i;
    rec.terminal = req.requester;
    rec.issued_at = req.issued_at;
    out_.requests.push_back(rec);
    timer(req.issued_at, req.requester, IssueRequest{i});
  }

  // Periodic activity, phase-shifted per node so reports do not collide.
  timer(SimTime{cfg_.mobility_step_ms}, kCloud, MobilityTick{});
  for (const auto& f : fogs_) {
    if (f.pile.queue_len > 0) timer(SimTime{3.6e6 / cfg_.charge_rate}, f.id, ChargeDone{});
  }
  out_.topology = nodes_;
  for (auto& rec : out_.topology) {
    if (rec.id.layer == Layer::kFog) rec.resources.queue_len = fogs_.at(rec.id.ordinal).pile.queue_len;
  }
  for (const auto& f : fogs_) {
    const double phase = cfg_.report_period_ms * (f.id.ordinal + 1.0) / (fogs_.size() + 1.0);
    timer(SimTime{phase}, f.id, StatusTick{});
  }
  for (const auto& c : fncs_) timer(SimTime{cfg_.report_period_ms}, c.coord.id(), CloudTick{});
  for (const auto& t : terminals_) {
    if (!t.serving) continue;
    const double phase = cfg_.telemetry_period_ms * (t.id.ordinal + 1.0) / (terminals_.size() + 1.0);
    timer(SimTime{phase}, t.id, TelemetryTick{});
  }
}

Point2D Simulation::location(NodeId id) const {
  switch (id.layer) {
    case Layer::kTerminal: return terminals_.at(id.ordinal).mob.position;
    case Layer::kFog: return fogs_.at(id.ordinal).location;
    case Layer::kFnc: return fncs_.at(id.ordinal).coord.location();
    case Layer::kCloud: return {0.0, 0.0};
  }
  return {};
}

double Simulation::capacity(NodeId id) const {
  switch (id.layer) {
    case Layer::kTerminal: return cfg_.terminal_capacity;
    case Layer::kFog: return cfg_.fog_capacity;
    case Layer::kFnc: return cfg_.fnc_capacity;
    case Layer::kCloud: return 64.0;
  }
  return 1.0;
}

const topology::Registry* Simulation::registry_for(const Point2D& p) const {
  if (fncs_.empty()) return nullptr;
  return &fncs_.at(topology::sector_of(p, static_cast<std::uint32_t>(fncs_.size()))).coord.registry();
}

topology::NodeStatus Simulation::status_of(const Fog& f) const {
  return {f.id, f.location, {cfg_.fog_capacity, f.pile.queue_len, cfg_.fog_job_rate}, now()};
}

SimTime Simulation::delay(NodeId from, NodeId to) const {
  auto it = inbound_.find(to);
  const double backlog = it == inbound_.end() ? 0.0 : static_cast<double>(it->second);
  sim::LatencyModel model = cfg_.latency;
  if (from.layer != Layer::kTerminal && to.layer != Layer::kTerminal) model.prop_ms_per_m *= cfg_.backhaul_factor;
  SimTime d = sim::link_latency(model, location(from), location(to), backlog / capacity(to));
  if (from.layer == Layer::kCloud || to.layer == Layer::kCloud) d += SimTime{cfg_.cloud_latency_ms};
  return d;
}

void Simulation::send(NodeId from, NodeId to, Message msg, std::optional<RequestId> rid) {
  const SimTime at = now() + delay(from, to);
  ++inbound_[to];
  if (rid) {
    ++out_.requests.at(*rid).messages;
  } else {
    ++out_.control_messages;
  }
  queue_.schedule(at, to, Envelope{std::move(msg), true, from});
}

void Simulation::timer(SimTime at, NodeId target, Message msg) {
  queue_.schedule(at, target, Envelope{std::move(msg), false, target});
}

RunResult Simulation::run() {
  const SimTime deadline = duration_ + timeout_ + SimTime::seconds(10.0);
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  out_.events_processed = queue_.run_until(deadline, [&](Queue&, const Event& ev) {
    digest = sim::mix64(digest ^ std::bit_cast<std::uint64_t>(ev.fire_at.ms));
    digest = sim::mix64(digest ^ ev.seq ^ (ev.target.key() << 8) ^ ev.payload.msg.index());
    if (ev.payload.via_network) --inbound_[ev.target];
    handle(ev);
  });
  out_.trace_digest = digest;
  for (auto& t : terminals_) out_.telemetry_sent[t.flow] = t.next_seq - 1;
  return std::move(out_);
}

void Simulation::handle(const Event& ev) {
  const NodeId at = ev.target;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IssueRequest>) {
          on_issue(at, m.index);
        } else if constexpr (std::is_same_v<T, MobilityTick>) {
          const SimTime dt{cfg_.mobility_step_ms};
          for (auto& t : terminals_) t.mob = step_mobility(t.mob, dt, arena_, t.mob_rng);
          if (issuing()) timer(now() + dt, kCloud, MobilityTick{});
        } else if constexpr (std::is_same_v<T, StatusTick>) {
          const Fog& f = fog(at);
          for (const auto& c : fncs_) send(at, c.coord.id(), StatusReportMsg{status_of(f)});
          if (issuing()) timer(now() + SimTime{cfg_.report_period_ms}, at, StatusTick{});
        } else if constexpr (std::is_same_v<T, StatusReportMsg>) {
          try {
            fnc(at).coord.registry().report_status(m.status);
          } catch (const Error&) {
            ++out_.stale_reports;
          }
        } else if constexpr (std::is_same_v<T, CloudTick>) {
          send(at, kCloud, CloudReportMsg{fnc(at).decisions});
          if (issuing()) timer(now() + SimTime{cfg_.report_period_ms}, at, CloudTick{});
        } else if constexpr (std::is_same_v<T, CloudReportMsg>) {
          ++out_.cloud_reports;
        } else if constexpr (std::is_same_v<T, ChargeDone>) {
          Fog& f = fog(at);
          if (f.pile.queue_len > 0) --f.pile.queue_len;
          if (f.pile.queue_len > 0) timer(now() + SimTime{3.6e6 / cfg_.charge_rate}, at, ChargeDone{});
        } else if constexpr (std::is_same_v<T, RequestMsg>) {
          on_request(at, m.req);
        } else if constexpr (std::is_same_v<T, JobMsg>) {
          on_job(at, m);
        } else if constexpr (std::is_same_v<T, JobDone>) {
          on_job_done(at, m);
        } else if constexpr (std::is_same_v<T, ResultMsg>) {
          on_result(at, m.result);
        } else if constexpr (std::is_same_v<T, AggregationTimer>) {
          if (auto c = fnc(at).coord.expire(m.id, now())) close_coordinated(at, *c);
        } else if constexpr (std::is_same_v<T, CollectionTimer>) {
          finish_traditional(terminal(at), m.id);
        } else if constexpr (std::is_same_v<T, DecisionMsg>) {
          on_decision(at, m);
        } else if constexpr (std::is_same_v<T, TelemetryTick>) {
          on_telemetry_tick(at);
        } else if constexpr (std::is_same_v<T, TelemetryMsg>) {
          on_telemetry(at, m);
        } else if constexpr (std::is_same_v<T, TelemetryAck>) {
          Terminal& t = terminal(at);
          t.last_rtt_ms = (now() - m.sent_at).ms;
          const double limit = cfg_.complaint_factor * cfg_.t_upper_ms;
          const bool cooled = !t.last_complaint ||
                              now() - *t.last_complaint >= SimTime{cfg_.migration_backoff_ms};
          if (cfg_.migration_enabled && t.last_rtt_ms > limit && cooled && t.serving) {
            t.last_complaint = now();
            send(at, *t.serving, ComplaintMsg{t.flow, t.last_rtt_ms, t.mob.position, t.id});
          }
        } else if constexpr (std::is_same_v<T, ComplaintMsg>) {
          on_complaint(at, m);
        } else if constexpr (std::is_same_v<T, StartMigrationMsg>) {
          on_start_migration(at, m);
        } else if constexpr (std::is_same_v<T, MigrationReplyMsg>) {
          on_migration_reply(at, m);
        } else if constexpr (std::is_same_v<T, ObjectStateMsg>) {
          on_object_state(at, m);
        } else if constexpr (std::is_same_v<T, MigrationDoneMsg>) {
          on_migration_done(at, m);
        } else if constexpr (std::is_same_v<T, HostChangedMsg>) {
          Terminal& t = terminal(at);
          if (t.flow == m.flow) t.serving = m.host;
        }
      },
      ev.payload.msg);
}

// ---------------------------------------------------------------------------
// Request path

void Simulation::on_issue(NodeId t_id, std::size_t index) {
  Terminal& t = terminal(t_id);
  ServiceRequest req = workload_.at(index);
  req.origin = t.mob.position;
  RequestRecord& rec = out_.requests.at(req.request_id);
  rec.origin = req.origin;

  if (cfg_.architecture == Architecture::kCoordinated) {
    const NodeId target{Layer::kFnc, topology::sector_of(req.origin, cfg_.n_fnc)};
    rec.coordinator = target;
    send(t_id, target, RequestMsg{req}, req.request_id);
    return;
  }

  // Traditional: address every pile within range directly.
  TradPending p{req, {}, {}};
  for (const auto& f : fogs_) {
    if (topology::distance(req.origin, f.location) <= req.query_range_m) p.addressed.insert(f.id);
  }
  if (p.addressed.empty()) {
    rec.status = RequestStatus::kTimedOut;
    return;
  }
  for (const auto& id : p.addressed) send(t_id, id, JobMsg{req, t_id}, req.request_id);
  rec.fanout = static_cast<std::uint32_t>(p.addressed.size());
  t.pending.emplace(req.request_id, std::move(p));
  timer(req.issued_at + timeout_, t_id, CollectionTimer{req.request_id});
}

void Simulation::on_request(NodeId fnc_id, const ServiceRequest& req) {
  Fnc& c = fnc(fnc_id);
  RequestRecord& rec = out_.requests.at(req.request_id);
  std::vector<NodeId> candidates;
  try {
    candidates = c.coord.begin(req, now());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoEligibleNodes) throw;
    send(fnc_id, req.requester, DecisionMsg{req.request_id, std::nullopt, true}, req.request_id);
    return;
  }
  const auto jobs = coordinator::dispatch(req, candidates, now(), kChargingApp,
                                          [&](NodeId n) { return delay(fnc_id, n); });
  for (const auto& job : jobs) send(fnc_id, job.assignee, JobMsg{req, fnc_id}, req.request_id);
  rec.fanout = static_cast<std::uint32_t>(jobs.size());
  timer(now() + timeout_, fnc_id, AggregationTimer{req.request_id});
}

void Simulation::on_job(NodeId fog_id, const JobMsg& job) {
  Fog& f = fog(fog_id);
  const double work = 1.0 + cfg_.eval_queue_factor * static_cast<double>(f.pile.queue_len);
  const double spread = cfg_.eval_jitter * (2.0 * f.jitter.uniform() - 1.0);
  auto slot = std::min_element(f.slots.begin(), f.slots.end());
  const SimTime start = std::max(now(), *slot);
  *slot = start + SimTime{1000.0 * work / cfg_.fog_job_rate * (1.0 + spread)};
  timer(*slot, fog_id, JobDone{job.req, job.reply_to});
}

void Simulation::on_job_done(NodeId fog_id, const JobDone& job) {
  Fog& f = fog(fog_id);
  f.pile.available = static_cast<double>(f.pile.queue_len) < cfg_.fog_capacity;
  JobResult result;
  try {
    result = fognode::evaluate_charging_request(job.req, f.pile, cfg_.weights);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPileUnavailable) throw;
    return;  // a full pile stays silent
  }
  ++out_.requests.at(job.req.request_id).replies;
  send(fog_id, job.reply_to, ResultMsg{result}, job.req.request_id);
}

void Simulation::on_result(NodeId target, const JobResult& result) {
  if (target.layer == Layer::kFnc) {
    if (auto c = fnc(target).coord.on_result(result, now())) close_coordinated(target, *c);
    return;
  }
  Terminal& t = terminal(target);
  auto it = t.pending.find(result.request_id);
  if (it == t.pending.end()) return;  // window already closed
  it->second.results.push_back(result);
  if (it->second.results.size() == it->second.addressed.size()) finish_traditional(t, result.request_id);
}

void Simulation::finish_traditional(Terminal& t, RequestId id) {
  auto it = t.pending.find(id);
  if (it == t.pending.end()) return;
  RequestRecord& rec = out_.requests.at(id);
  if (it->second.results.empty()) {
    rec.status = RequestStatus::kTimedOut;
  } else {
    const auto decision = coordinator::aggregate(id, it->second.results, now());
    rec.status = RequestStatus::kCompleted;
    rec.decided_at = now();
    rec.chosen = decision.chosen;
    book(decision.chosen);
  }
  t.pending.erase(it);
}

void Simulation::close_coordinated(NodeId fnc_id, const coordinator::Closure& c) {
  const NodeId requester = out_.requests.at(c.request_id).terminal;
  std::optional<NodeId> chosen;
  if (c.decision) {
    chosen = c.decision->chosen;
    ++fnc(fnc_id).decisions;
  }
  send(fnc_id, requester, DecisionMsg{c.request_id, chosen, false}, c.request_id);
}

void Simulation::on_decision(NodeId, const DecisionMsg& d) {
  RequestRecord& rec = out_.requests.at(d.id);
  if (d.chosen) {
    rec.status = RequestStatus::kCompleted;
    rec.decided_at = now();
    rec.chosen = d.chosen;
    book(*d.chosen);
  } else {
    rec.status = d.no_eligible ? RequestStatus::kNoEligible : RequestStatus::kTimedOut;
  }
}

void Simulation::book(NodeId pile) {
  Fog& f = fog(pile);
  if (f.pile.queue_len++ == 0) timer(now() + SimTime{3.6e6 / cfg_.charge_rate}, pile, ChargeDone{});
}

// ---------------------------------------------------------------------------
// Flow telemetry and migration

void Simulation::on_telemetry_tick(NodeId t_id) {
  Terminal& t = terminal(t_id);
  if (t.serving) {
    TelemetryMsg m{t.flow, t.next_seq++, t.telemetry_rng.uniform(0.0, 100.0), now(), t.mob.position,
                   t.last_rtt_ms, t.id, false};
    send(t_id, *t.serving, std::move(m));
  }
  if (issuing()) timer(now() + SimTime{cfg_.telemetry_period_ms}, t_id, TelemetryTick{});
}

void Simulation::record_processed(const std::string& flow, const std::vector<std::uint64_t>& seqs) {
  auto& log = out_.processed[flow];
  log.insert(log.end(), seqs.begin(), seqs.end());
}

void Simulation::on_telemetry(NodeId fog_id, const TelemetryMsg& m) {
  Fog& f = fog(fog_id);
  if (f.host.resident(m.flow)) {
    f.terminal_pos[m.flow] = m.terminal_pos;
    f.flow_terminal[m.flow] = m.terminal;
    record_processed(m.flow, f.host.offer(m.flow, m.seq, m.value));
    if (!m.forwarded) {
      send(fog_id, m.terminal, TelemetryAck{m.flow, m.seq, m.sent_at});
      if (m.last_rtt_ms > 0.0) evaluate_migration(f, m.flow, m.last_rtt_ms, false);
    }
    return;
  }
  if (f.awaiting.count(m.flow)) {
    f.awaiting_buffer[m.flow].push_back(m);
    return;
  }
  if (auto it = f.forward.find(m.flow); it != f.forward.end()) {
    TelemetryMsg fwd = m;
    fwd.forwarded = true;
    send(fog_id, it->second, std::move(fwd));
    return;
  }
  throw Error(ErrorCode::kFlowNotResident, m.flow + " reached " + topology::to_string(fog_id) +
                                               " with no route");
}

void Simulation::on_complaint(NodeId fog_id, const ComplaintMsg& m) {
  Fog& f = fog(fog_id);
  if (f.host.resident(m.flow)) {
    f.terminal_pos[m.flow] = m.terminal_pos;
    evaluate_migration(f, m.flow, m.rtt_ms, true);
  } else if (auto it = f.forward.find(m.flow); it != f.forward.end()) {
    send(fog_id, it->second, m);
  }
}

void Simulation::evaluate_migration(Fog& f, const std::string& flow, double sample_ms,
                                    bool terminal_initiated) {
  if (!cfg_.migration_enabled) return;
  auto est = f.ewma.try_emplace(flow, cfg_.ewma_alpha).first;
  const double observed = est->second.observe(sample_ms);
  if (f.sessions.count(flow)) return;
  if (auto b = f.backoff_until.find(flow); b != f.backoff_until.end() && now() < b->second) return;
  if (observed < cfg_.t_upper_ms) return;

  // Candidate group: fog nodes with room, ordered by predicted round trip to
  // the flow's terminal, keeping only those that would improve on the
  // observed latency.
  const Point2D terminal_at = f.terminal_pos.at(flow);
  std::vector<std::pair<double, NodeId>> ranked;
  if (const auto* reg = registry_for(f.location)) {
    for (const auto& st : reg->snapshot()) {
      if (st.node.layer != Layer::kFog || st.node == f.id || !st.resources.has_room()) continue;
      const double rtt = 2.0 * sim::link_latency(cfg_.latency, terminal_at, st.location, 0.0).ms;
      if (rtt < observed) ranked.emplace_back(rtt, st.node);
    }
  }
  std::sort(ranked.begin(), ranked.end());
  fognode::MigrationPolicy policy;
  policy.t_upper_ms = cfg_.t_upper_ms;
  for (const auto& r : ranked) policy.candidates.push_back(r.second);

  auto [it, inserted] = f.sessions.try_emplace(flow, flow, f.id, std::move(policy));
  f.session_terminal_initiated[flow] = terminal_initiated;
  drive_session(f, flow, it->second.begin(observed));
}

void Simulation::drive_session(Fog& f, const std::string& flow, const MigrationSession::Action& action) {
  MigrationSession& s = f.sessions.at(flow);
  switch (action.step) {
    case MigrationSession::Step::kSendStart:
      send(f.id, *action.target, StartMigrationMsg{flow, f.id});
      return;
    case MigrationSession::Step::kSendState: {
      FlowState state = f.host.on_migration_start(flow);
      send(f.id, *action.target, ObjectStateMsg{state, f.id, f.flow_terminal.at(flow)});
      const auto leftovers = f.host.release(flow);
      f.forward[flow] = *action.target;
      for (const auto& ev : leftovers) {
        send(f.id, *action.target,
             TelemetryMsg{flow, ev.seq, ev.value, now(), f.terminal_pos.at(flow), 0.0,
                          f.flow_terminal.at(flow), true});
      }
      return;
    }
    case MigrationSession::Step::kDone:
      audit(f, s, f.session_terminal_initiated[flow]);
      if (s.status() == fognode::MigrationStatus::kFailed) {
        f.backoff_until[flow] = now() + SimTime{cfg_.migration_backoff_ms};
      }
      f.sessions.erase(flow);
      return;
  }
}

void Simulation::audit(const Fog& f, const MigrationSession& s, bool terminal_initiated) {
  MigrationRecord rec;
  rec.flow_id = s.flow_id();
  rec.source = f.id;
  rec.target = s.current_target();
  rec.attempts = s.attempts();
  rec.outcome = *s.status();
  rec.trigger_latency_ms = s.trigger_latency_ms();
  rec.t_upper_ms = s.policy().t_upper_ms;
  rec.at = now();
  rec.terminal_initiated = terminal_initiated;
  rec.warning = s.warning();
  out_.migrations.push_back(std::move(rec));
}

void Simulation::on_start_migration(NodeId fog_id, const StartMigrationMsg& m) {
  Fog& f = fog(fog_id);
  const bool accept = static_cast<double>(f.pile.queue_len) < cfg_.fog_capacity &&
                      !f.host.resident(m.flow) && !f.awaiting.count(m.flow);
  if (accept) f.awaiting[m.flow] = m.source;
  send(fog_id, m.source,
       MigrationReplyMsg{m.flow, accept ? MigrationReply::kAccept : MigrationReply::kReject, fog_id});
}

void Simulation::on_migration_reply(NodeId fog_id, const MigrationReplyMsg& m) {
  Fog& f = fog(fog_id);
  auto it = f.sessions.find(m.flow);
  if (it == f.sessions.end()) return;
  drive_session(f, m.flow, it->second.on_reply(m.reply));
}

void Simulation::on_object_state(NodeId fog_id, const ObjectStateMsg& m) {
  Fog& f = fog(fog_id);
  const std::string& flow = m.state.flow_id;
  f.awaiting.erase(flow);
  auto buffered = std::move(f.awaiting_buffer[flow]);
  f.awaiting_buffer.erase(flow);
  const bool room = static_cast<double>(f.pile.queue_len) < cfg_.fog_capacity;
  try {
    f.host.on_migration_end(m.state, room);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapacityExceeded) throw;
    f.forward[flow] = m.source;
    send(fog_id, m.source, MigrationDoneMsg{flow, fog_id, false, m.state});
    for (auto& b : buffered) {
      b.forwarded = true;
      send(fog_id, m.source, std::move(b));
    }
    return;
  }
  f.forward.erase(flow);
  f.ewma.erase(flow);
  f.flow_terminal[flow] = m.terminal;
  if (!buffered.empty()) f.terminal_pos[flow] = buffered.back().terminal_pos;
  else f.terminal_pos[flow] = location(m.terminal);
  for (const auto& b : buffered) record_processed(flow, f.host.offer(flow, b.seq, b.value));
  send(fog_id, m.source, MigrationDoneMsg{flow, fog_id, true, std::nullopt});
  send(fog_id, m.terminal, HostChangedMsg{flow, fog_id});
}

void Simulation::on_migration_done(NodeId fog_id, const MigrationDoneMsg& m) {
  Fog& f = fog(fog_id);
  auto it = f.sessions.find(m.flow);
  if (it == f.sessions.end()) return;
  if (m.accepted) {
    it->second.confirm();
    f.ewma.erase(m.flow);
    drive_session(f, m.flow, {});
    return;
  }
  f.host.restore(*m.returned);
  f.forward.erase(m.flow);
  drive_session(f, m.flow, it->second.on_late_reject());
}

}  // namespace

RunResult simulate(const ScenarioConfig& config) { return Simulation(config).run(); }

RunResult run_traditional(const ScenarioConfig& config) {
  if (config.architecture != Architecture::kTraditional) {
    throw Error(ErrorCode::kInvalidArgument, "run_traditional needs architecture = traditional");
  }
  return simulate(config);
}

RunResult run_coordinated(const ScenarioConfig& config) {
  if (config.architecture != Architecture::kCoordinated) {
    throw Error(ErrorCode::kInvalidArgument, "run_coordinated needs architecture = coordinated");
  }
  return simulate(config);
}

}  // namespace fogsim::scenario
