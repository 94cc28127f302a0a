#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fogsim/coordinator/messages.hpp"
#include "fogsim/sim/time.hpp"
#include "fogsim/topology/registry.hpp"

namespace fogsim::coordinator {

// Fog nodes within query range of the request origin whose last reported
// queue is below capacity, nearest first. Throws NoEligibleNodes if none.
std::vector<topology::NodeId> filter_candidates(const topology::Registry& registry,
                                                const ServiceRequest& request);

// One job per candidate; arrival time is clock + link_delay(assignee).
std::vector<JobDispatch> dispatch(const ServiceRequest& request,
                                  std::span<const topology::NodeId> candidates, sim::SimTime clock,
                                  std::string_view substream,
                                  const std::function<sim::SimTime(topology::NodeId)>& link_delay);

// Minimal score wins; equal scores go to the lowest NodeId. Throws
// EmptyResultSet for no results and InvalidArgument for foreign results.
Decision aggregate(RequestId request_id, std::span<const JobResult> results, sim::SimTime decided_at);

// Summary of a finished request at the coordinator.
struct Closure {
  RequestId request_id = 0;
  std::optional<Decision> decision;  // empty: nothing arrived before the timeout
  std::size_t fanout = 0;
  std::size_t results = 0;
  bool timed_out = false;
};

// Per-FNC request bookkeeping. Messaging is left to the caller: begin() yields
// the candidate group to dispatch to, results are fed in as they arrive, and
// expire() is called when the aggregation timer fires.
class Coordinator {
 public:
  Coordinator(topology::NodeId self, topology::Point2D location, sim::SimTime aggregation_timeout,
              sim::SimTime report_period = sim::SimTime{1000.0});

  topology::NodeId id() const { return self_; }
  topology::Point2D location() const { return location_; }
  sim::SimTime aggregation_timeout() const { return timeout_; }

  topology::Registry& registry() { return registry_; }
  const topology::Registry& registry() const { return registry_; }

  // Throws NoEligibleNodes; nothing is recorded in that case.
  std::vector<topology::NodeId> begin(const ServiceRequest& request, sim::SimTime now);

  // Returns a closure once every dispatched candidate has answered. Results
  // for unknown or already closed requests are counted and ignored.
  std::optional<Closure> on_result(const JobResult& result, sim::SimTime now);

  // Aggregation timer. No-op (nullopt) if the request already closed.
  std::optional<Closure> expire(RequestId request_id, sim::SimTime now);

  std::size_t open_requests() const { return pending_.size(); }
  std::size_t late_results() const { return late_results_; }

 private:
  struct Pending {
    ServiceRequest request;
    std::vector<topology::NodeId> candidates;
    std::vector<JobResult> results;
  };

  Closure close(std::map<RequestId, Pending>::iterator it, sim::SimTime now, bool timed_out);

  topology::NodeId self_;
  topology::Point2D location_;
  sim::SimTime timeout_;
  topology::Registry registry_;
  std::map<RequestId, Pending> pending_;
  std::size_t late_results_ = 0;
};

}  // namespace fogsim::coordinator
