#include "fogsim/fognode/flow.hpp"

#include <charconv>
#include <json.hpp>

#include "fogsim/error.hpp"

namespace fogsim::fognode {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "bad operator state number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string FlowState::encode() const {
  nlohmann::json j;
  j["flow_id"] = flow_id;
  j["cursor"] = cursor;
  j["origin"] = {{"layer", std::string(topology::to_string(origin.layer))},
                 {"ordinal", origin.ordinal}};
  j["operators"] = operator_states;
  return j.dump();
}

FlowState FlowState::decode(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    FlowState s;
    s.flow_id = j.at("flow_id").get<std::string>();
    s.cursor = j.at("cursor").get<std::uint64_t>();
    auto layer = topology::parse_layer(j.at("origin").at("layer").get<std::string>());
    if (!layer) throw Error(ErrorCode::kParseError, "bad origin layer");
    s.origin = {*layer, j.at("origin").at("ordinal").get<std::uint32_t>()};
    s.operator_states = j.at("operators").get<std::map<std::string, std::string>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

FlowHost::FlowHost(topology::NodeId node, DataflowGraph flow_template)
    : node_(node), template_(flow_template.placed_on(node)) {
  template_.validate();
  program_ = translate_flow(template_, node_);
}

void FlowHost::install(const std::string& flow_id) {
  if (resident(flow_id)) throw Error(ErrorCode::kInvalidArgument, "flow " + flow_id + " already resident");
  Resident r;
  for (const auto& ins : program_) r.ops.emplace(ins.op_id, Counters{});
  flows_.emplace(flow_id, std::move(r));
}

FlowHost::Resident& FlowHost::get(const std::string& flow_id) {
  auto it = flows_.find(flow_id);
  if (it == flows_.end()) {
    throw Error(ErrorCode::kFlowNotResident, flow_id + " on " + topology::to_string(node_));
  }
  return it->second;
}

const FlowHost::Resident& FlowHost::get(const std::string& flow_id) const {
  auto it = flows_.find(flow_id);
  if (it == flows_.end()) {
    throw Error(ErrorCode::kFlowNotResident, flow_id + " on " + topology::to_string(node_));
  }
  return it->second;
}

bool FlowHost::frozen(const std::string& flow_id) const { return get(flow_id).frozen; }

std::uint64_t FlowHost::cursor(const std::string& flow_id) const { return get(flow_id).cursor; }

std::vector<std::string> FlowHost::resident_flows() const {
  std::vector<std::string> out;
  for (const auto& kv : flows_) out.push_back(kv.first);
  return out;
}

void FlowHost::execute(Resident& flow, std::uint64_t seq, double value) const {
  for (const auto& ins : program_) {
    Counters& c = flow.ops.at(ins.op_id);
    ++c.invocations;
    switch (ins.kind) {
      case OperatorKind::kInput: c.accumulator = value; break;
      case OperatorKind::kProcess: c.accumulator += value; break;
      case OperatorKind::kOutput: c.accumulator = static_cast<double>(seq); break;
    }
  }
  flow.cursor = seq;
}

std::vector<std::uint64_t> FlowHost::offer(const std::string& flow_id, std::uint64_t seq,
                                           double value) {
  Resident& flow = get(flow_id);
  std::vector<std::uint64_t> done;
  if (seq <= flow.cursor || flow.pending.count(seq)) {
    ++duplicates_;
    return done;
  }
  flow.pending.emplace(seq, value);
  if (flow.frozen) return done;
  for (auto it = flow.pending.begin(); it != flow.pending.end() && it->first == flow.cursor + 1;
       it = flow.pending.erase(it)) {
    execute(flow, it->first, it->second);
    done.push_back(it->first);
  }
  return done;
}

FlowState FlowHost::snapshot(const std::string& flow_id) const {
  const Resident& flow = get(flow_id);
  FlowState s;
  s.flow_id = flow_id;
  s.cursor = flow.cursor;
  s.origin = node_;
  for (const auto& [op, c] : flow.ops) {
    s.operator_states[op] = std::to_string(c.invocations) + ";" + format_double(c.accumulator);
  }
  return s;
}

FlowState FlowHost::on_migration_start(const std::string& flow_id) {
  Resident& flow = get(flow_id);
  flow.frozen = true;
  return snapshot(flow_id);
}

std::vector<BufferedEvent> FlowHost::release(const std::string& flow_id) {
  Resident& flow = get(flow_id);
  std::vector<BufferedEvent> leftover;
  for (const auto& [seq, value] : flow.pending) leftover.push_back({seq, value});
  flows_.erase(flow_id);
  return leftover;
}

void FlowHost::adopt(const FlowState& state) {
  Resident r;
  r.cursor = state.cursor;
  for (const auto& ins : program_) {
    auto it = state.operator_states.find(ins.op_id);
    if (it == state.operator_states.end()) {
      throw Error(ErrorCode::kInvalidFlow, "state for " + state.flow_id + " lacks operator " + ins.op_id);
    }
    const std::string& blob = it->second;
    const auto sep = blob.find(';');
    if (sep == std::string::npos) throw Error(ErrorCode::kParseError, "bad operator state '" + blob + "'");
    Counters c;
    c.invocations = std::stoull(blob.substr(0, sep));
    c.accumulator = parse_double(std::string_view(blob).substr(sep + 1));
    r.ops.emplace(ins.op_id, c);
  }
  flows_[state.flow_id] = std::move(r);
}

MigrationAck FlowHost::on_migration_end(const FlowState& state, bool has_room) {
  if (!has_room) {
    throw Error(ErrorCode::kCapacityExceeded,
                topology::to_string(node_) + " cannot take " + state.flow_id);
  }
  if (resident(state.flow_id)) {
    throw Error(ErrorCode::kInvalidArgument, state.flow_id + " already resident on target");
  }
  adopt(state);
  return {state.flow_id, node_, state.cursor};
}

void FlowHost::restore(const FlowState& state) { adopt(state); }

}  // namespace fogsim::fognode
