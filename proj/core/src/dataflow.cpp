#include "fogsim/fognode/dataflow.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "fogsim/error.hpp"

namespace fogsim::fognode {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kInput: return "input";
    case OperatorKind::kProcess: return "process";
    case OperatorKind::kOutput: return "output";
  }
  return "unknown";
}

const Operator* DataflowGraph::find(std::string_view op_id) const {
  for (const auto& op : operators) {
    if (op.id == op_id) return &op;
  }
  return nullptr;
}

namespace {

// Returns operators in topological order with ties broken by op_id, or throws
// CyclicFlow.
std::vector<std::string> topo_order(const DataflowGraph& g) {
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& op : g.operators) indegree[op.id] = 0;
  for (const auto& [from, to] : g.edges) {
    ++indegree[to];
    out[from].push_back(to);
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  std::vector<std::string> order;
  order.reserve(indegree.size());
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const auto& next : out[id]) {
      if (--indegree[next] == 0) ready.push(next);
    }
  }
  if (order.size() != indegree.size()) {
    throw Error(ErrorCode::kCyclicFlow, "dataflow graph contains a cycle");
  }
  return order;
}

}  // namespace

void DataflowGraph::validate() const {
  std::set<std::string> ids;
  for (const auto& op : operators) {
    if (op.id.empty()) throw Error(ErrorCode::kInvalidFlow, "operator with empty id");
    if (!ids.insert(op.id).second) throw Error(ErrorCode::kInvalidFlow, "duplicate operator " + op.id);
  }
  for (const auto& [from, to] : edges) {
    const Operator* src = find(from);
    const Operator* dst = find(to);
    if (src == nullptr || dst == nullptr) {
      throw Error(ErrorCode::kInvalidFlow, "edge " + from + "->" + to + " has a missing endpoint");
    }
    if (src->kind == OperatorKind::kOutput) {
      throw Error(ErrorCode::kInvalidFlow, "output operator " + from + " has an outgoing edge");
    }
    if (dst->kind == OperatorKind::kInput) {
      throw Error(ErrorCode::kInvalidFlow, "input operator " + to + " has an incoming edge");
    }
  }
  topo_order(*this);
}

DataflowGraph DataflowGraph::fragment_for(topology::NodeId node) const {
  DataflowGraph frag;
  std::set<std::string> keep;
  for (const auto& op : operators) {
    auto it = placement.find(op.id);
    if (it != placement.end() && it->second == node) {
      frag.operators.push_back(op);
      frag.placement.emplace(op.id, node);
      keep.insert(op.id);
    }
  }
  for (const auto& e : edges) {
    if (keep.count(e.first) && keep.count(e.second)) frag.edges.push_back(e);
  }
  return frag;
}

DataflowGraph DataflowGraph::placed_on(topology::NodeId node) const {
  DataflowGraph g = *this;
  g.placement.clear();
  for (const auto& op : g.operators) g.placement.emplace(op.id, node);
  return g;
}

std::vector<Instruction> translate_flow(const DataflowGraph& fragment, topology::NodeId node) {
  for (const auto& op : fragment.operators) {
    auto it = fragment.placement.find(op.id);
    if (it == fragment.placement.end() || it->second != node) {
      throw Error(ErrorCode::kInvalidFlow,
                  "operator " + op.id + " is not placed on " + topology::to_string(node));
    }
  }
  const auto order = topo_order(fragment);
  std::map<std::string, std::vector<std::string>> inputs;
  for (const auto& [from, to] : fragment.edges) inputs[to].push_back(from);

  std::vector<Instruction> program;
  program.reserve(order.size());
  for (const auto& id : order) {
    Instruction ins{id, fragment.find(id)->kind, inputs[id]};
    std::sort(ins.inputs.begin(), ins.inputs.end());
    program.push_back(std::move(ins));
  }
  return program;
}

DataflowGraph make_chain(const std::vector<std::string>& process_ops) {
  DataflowGraph g;
  g.operators.push_back({"in", OperatorKind::kInput});
  std::string prev = "in";
  for (const auto& id : process_ops) {
    g.operators.push_back({id, OperatorKind::kProcess});
    g.edges.emplace_back(prev, id);
    prev = id;
  }
  g.operators.push_back({"out", OperatorKind::kOutput});
  g.edges.emplace_back(prev, "out");
  return g;
}

}  // namespace fogsim::fognode
