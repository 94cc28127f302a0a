#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fogsim/topology/node.hpp"

namespace fogsim::fognode {

enum class OperatorKind : std::uint8_t { kInput, kProcess, kOutput };

std::string_view to_string(OperatorKind kind);

struct Operator {
  std::string id;
  OperatorKind kind = OperatorKind::kProcess;
};

struct DataflowGraph {
  std::vector<Operator> operators;
  std::vector<std::pair<std::string, std::string>> edges;  // producer -> consumer
  std::map<std::string, topology::NodeId> placement;

  const Operator* find(std::string_view op_id) const;

  // Structural checks: unique ids, edge endpoints exist, inputs have no
  // incoming edges, outputs no outgoing edges. Throws InvalidFlow, or
  // CyclicFlow when the edges contain a cycle.
  void validate() const;

  // Operators placed on `node` and the edges between them.
  DataflowGraph fragment_for(topology::NodeId node) const;

  // Same graph with every operator placed on `node`.
  DataflowGraph placed_on(topology::NodeId node) const;
};

struct Instruction {
  std::string op_id;
  OperatorKind kind = OperatorKind::kProcess;
  std::vector<std::string> inputs;  // producers, in op_id order
};

// Topological order of a single-node fragment (Kahn's algorithm, ready
// operators taken in op_id order). Throws CyclicFlow on a cycle and
// InvalidFlow if an operator is placed elsewhere or unplaced.
std::vector<Instruction> translate_flow(const DataflowGraph& fragment, topology::NodeId node);

// input -> process -> output chain used by the telemetry flows.
DataflowGraph make_chain(const std::vector<std::string>& process_ops);

}  // namespace fogsim::fognode
