#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fogsim/sim/time.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::topology {

// Latest status per node, as gathered from periodic reports.
class Registry {
 public:
  explicit Registry(sim::SimTime report_period = sim::SimTime{1000.0})
      : report_period_(report_period) {}

  // Throws StaleReport when the status is older than the stored one. A report
  // with an equal timestamp replaces the entry.
  void report_status(const NodeStatus& status);

  const NodeStatus* find(NodeId id) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  sim::SimTime report_period() const { return report_period_; }

  // Registered nodes of `layer` within range_m of center (inclusive), nearest
  // first, ties by NodeId.
  std::vector<NodeId> nodes_within(const Point2D& center, double range_m, Layer layer) const;

  std::vector<NodeStatus> snapshot() const;

  bool operator==(const Registry& other) const;

 private:
  std::map<NodeId, NodeStatus> entries_;
  sim::SimTime report_period_;
};

}  // namespace fogsim::topology
