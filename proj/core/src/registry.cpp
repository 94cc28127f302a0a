#include "fogsim/topology/registry.hpp"

#include <algorithm>
#include <utility>

#include "fogsim/error.hpp"

namespace fogsim::topology {

void Registry::report_status(const NodeStatus& status) {
  auto it = entries_.find(status.node);
  if (it == entries_.end()) {
    entries_.emplace(status.node, status);
    return;
  }
  if (status.reported_at < it->second.reported_at) {
    throw Error(ErrorCode::kStaleReport,
                "report from " + to_string(status.node) + " at " +
                    std::to_string(status.reported_at.ms) + " ms is older than stored " +
                    std::to_string(it->second.reported_at.ms) + " ms");
  }
  it->second = status;
}

const NodeStatus* Registry::find(NodeId id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<NodeId> Registry::nodes_within(const Point2D& center, double range_m,
                                           Layer layer) const {
  if (range_m < 0.0) throw Error(ErrorCode::kInvalidArgument, "range_m must be >= 0");
  std::vector<std::pair<double, NodeId>> hits;
  for (const auto& [id, status] : entries_) {
    if (id.layer != layer) continue;
    const double d = distance(center, status.location);
    if (d <= range_m) hits.emplace_back(d, id);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<NodeId> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

std::vector<NodeStatus> Registry::snapshot() const {
  std::vector<NodeStatus> out;
  out.reserve(entries_.size());
  for (const auto& kv : entries_) out.push_back(kv.second);
  return out;
}

bool Registry::operator==(const Registry& other) const {
  if (report_period_ != other.report_period_ || entries_.size() != other.entries_.size()) {
    return false;
  }
  auto same = [](const NodeStatus& a, const NodeStatus& b) {
    return a.node == b.node && a.location == b.location && a.reported_at == b.reported_at &&
           a.resources.capacity == b.resources.capacity &&
           a.resources.queue_len == b.resources.queue_len &&
           a.resources.service_rate == b.resources.service_rate;
  };
  return std::equal(entries_.begin(), entries_.end(), other.entries_.begin(),
                    [&](const auto& a, const auto& b) { return same(a.second, b.second); });
}

}  // namespace fogsim::topology
