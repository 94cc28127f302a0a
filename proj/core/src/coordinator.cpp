#include "fogsim/coordinator/coordinator.hpp"

#include <algorithm>

#include "fogsim/error.hpp"

namespace fogsim::coordinator {

std::vector<topology::NodeId> filter_candidates(const topology::Registry& registry,
                                                const ServiceRequest& request) {
  auto in_range = registry.nodes_within(request.origin, request.query_range_m, topology::Layer::kFog);
  std::vector<topology::NodeId> out;
  for (const auto& id : in_range) {
    if (registry.find(id)->resources.has_room()) out.push_back(id);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kNoEligibleNodes,
                "request " + std::to_string(request.request_id) + " has no eligible fog node");
  }
  return out;
}

std::vector<JobDispatch> dispatch(const ServiceRequest& request,
                                  std::span<const topology::NodeId> candidates, sim::SimTime clock,
                                  std::string_view substream,
                                  const std::function<sim::SimTime(topology::NodeId)>& link_delay) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoEligibleNodes,
                "request " + std::to_string(request.request_id) + " has no candidates");
  }
  std::vector<JobDispatch> jobs;
  jobs.reserve(candidates.size());
  for (const auto& node : candidates) {
    jobs.push_back({request.request_id, node, std::string(substream), clock, clock + link_delay(node)});
  }
  return jobs;
}

Decision aggregate(RequestId request_id, std::span<const JobResult> results, sim::SimTime decided_at) {
  if (results.empty()) {
    throw Error(ErrorCode::kEmptyResultSet, "request " + std::to_string(request_id));
  }
  const JobResult* best = nullptr;
  for (const auto& r : results) {
    if (r.request_id != request_id) {
      throw Error(ErrorCode::kInvalidArgument, "result for request " + std::to_string(r.request_id) +
                                                   " aggregated under " + std::to_string(request_id));
    }
    if (best == nullptr || r.score < best->score ||
        (r.score == best->score && r.responder < best->responder)) {
      best = &r;
    }
  }
  return {request_id, best->responder, decided_at};
}

Coordinator::Coordinator(topology::NodeId self, topology::Point2D location,
                         sim::SimTime aggregation_timeout, sim::SimTime report_period)
    : self_(self), location_(location), timeout_(aggregation_timeout), registry_(report_period) {}

std::vector<topology::NodeId> Coordinator::begin(const ServiceRequest& request, sim::SimTime now) {
  (void)now;
  auto candidates = filter_candidates(registry_, request);
  pending_[request.request_id] = Pending{request, candidates, {}};
  return candidates;
}

Closure Coordinator::close(std::map<RequestId, Pending>::iterator it, sim::SimTime now,
                           bool timed_out) {
  Closure c;
  c.request_id = it->first;
  c.fanout = it->second.candidates.size();
  c.results = it->second.results.size();
  c.timed_out = timed_out;
  if (!it->second.results.empty()) c.decision = aggregate(it->first, it->second.results, now);
  pending_.erase(it);
  return c;
}

std::optional<Closure> Coordinator::on_result(const JobResult& result, sim::SimTime now) {
  auto it = pending_.find(result.request_id);
  if (it == pending_.end()) {
    ++late_results_;
    return std::nullopt;
  }
  it->second.results.push_back(result);
  if (it->second.results.size() < it->second.candidates.size()) return std::nullopt;
  return close(it, now, false);
}

std::optional<Closure> Coordinator::expire(RequestId request_id, sim::SimTime now) {
  auto it = pending_.find(request_id);
  if (it == pending_.end()) return std::nullopt;
  return close(it, now, true);
}

}  // namespace fogsim::coordinator
