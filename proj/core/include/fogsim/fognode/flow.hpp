#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fogsim/fognode/dataflow.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::fognode {

// Transferable snapshot of a resident flow.
struct FlowState {
  std::string flow_id;
  std::map<std::string, std::string> operator_states;  // op_id -> opaque bytes
  std::uint64_t cursor = 0;                            // last processed seq
  topology::NodeId origin;                             // node the snapshot was taken on

  bool operator==(const FlowState&) const = default;

  std::string encode() const;
  static FlowState decode(const std::string& text);
};

struct BufferedEvent {
  std::uint64_t seq = 0;
  double value = 0.0;
};

struct MigrationAck {
  std::string flow_id;
  topology::NodeId host;
  std::uint64_t cursor = 0;
};

// The flows resident on one fog node. Every node holds the same deployed flow
// template; a flow instance is that template plus per-operator state and a
// cursor. Events are processed strictly in seq order: out-of-order arrivals
// wait in a reorder buffer, and events at or below the cursor are dropped as
// duplicates.
class FlowHost {
 public:
  FlowHost(topology::NodeId node, DataflowGraph flow_template);

  topology::NodeId node() const { return node_; }
  const std::vector<Instruction>& program() const { return program_; }

  void install(const std::string& flow_id);
  bool resident(const std::string& flow_id) const { return flows_.count(flow_id) != 0; }
  bool frozen(const std::string& flow_id) const;
  std::size_t resident_count() const { return flows_.size(); }
  std::vector<std::string> resident_flows() const;
  std::uint64_t cursor(const std::string& flow_id) const;
  std::uint64_t duplicates_dropped() const { return duplicates_; }

  // Returns the seqs processed by this call, ascending. A frozen flow only
  // buffers.
  std::vector<std::uint64_t> offer(const std::string& flow_id, std::uint64_t seq, double value);

  // Snapshot without side effects.
  FlowState snapshot(const std::string& flow_id) const;

  // Migration API, source side: snapshot and freeze.
  FlowState on_migration_start(const std::string& flow_id);
  // Drops the flow and hands back anything still buffered for forwarding.
  std::vector<BufferedEvent> release(const std::string& flow_id);
  // Migration API, target side. Throws CapacityExceeded when has_room is false.
  MigrationAck on_migration_end(const FlowState& state, bool has_room);
  // Reinstates a flow whose transfer was refused late by the target.
  void restore(const FlowState& state);

 private:
  struct Counters {
    std::uint64_t invocations = 0;
    double accumulator = 0.0;
  };
  struct Resident {
    std::map<std::string, Counters> ops;
    std::uint64_t cursor = 0;
    bool frozen = false;
    std::map<std::uint64_t, double> pending;
  };

  Resident& get(const std::string& flow_id);
  const Resident& get(const std::string& flow_id) const;
  void execute(Resident& flow, std::uint64_t seq, double value) const;
  void adopt(const FlowState& state);

  topology::NodeId node_;
  DataflowGraph template_;
  std::vector<Instruction> program_;
  std::map<std::string, Resident> flows_;
  std::uint64_t duplicates_ = 0;
};

}  // namespace fogsim::fognode
