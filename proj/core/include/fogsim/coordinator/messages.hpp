#pragma once

#include <cstdint>
#include <string>

#include "fogsim/sim/time.hpp"
#include "fogsim/topology/geometry.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::coordinator {

using RequestId = std::uint64_t;

enum class RequestKind : std::uint8_t { kChargingQuery };

struct ServiceRequest {
  RequestId request_id = 0;
  topology::NodeId requester;
  topology::Point2D origin;
  RequestKind kind = RequestKind::kChargingQuery;
  double query_range_m = 1000.0;
  sim::SimTime issued_at;
};

struct JobDispatch {
  RequestId request_id = 0;
  topology::NodeId assignee;
  std::string substream;  // deployed flow the job runs on
  sim::SimTime dispatched_at;
  sim::SimTime arrives_at;
};

struct PileOffer {
  topology::Point2D location;
  double expected_wait_ms = 0.0;
};

struct JobResult {
  RequestId request_id = 0;
  topology::NodeId responder;
  double score = 0.0;  // lower is better
  PileOffer offer;
};

struct Decision {
  RequestId request_id = 0;
  topology::NodeId chosen;
  sim::SimTime decided_at;
};

}  // namespace fogsim::coordinator
