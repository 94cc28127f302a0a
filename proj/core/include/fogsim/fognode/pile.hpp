#pragma once

#include <cstdint>

#include "fogsim/coordinator/messages.hpp"
#include "fogsim/topology/geometry.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::fognode {

struct PileState {
  topology::NodeId node;
  topology::Point2D location;
  std::uint32_t queue_len = 0;  // pending charges
  double service_rate = 240.0;  // charges per virtual hour
  bool available = true;

  double expected_wait_hours() const { return queue_len / service_rate; }
};

struct ScoreWeights {
  double w_dist = 1.0;     // per meter
  double w_wait = 50000.0;  // per hour of expected wait

  void validate() const;
};

// score = w_dist * distance(origin, pile) + w_wait * queue_len / service_rate.
// Throws PileUnavailable when the pile is not available.
coordinator::JobResult evaluate_charging_request(const coordinator::ServiceRequest& request,
                                                 const PileState& pile,
                                                 const ScoreWeights& weights);

}  // namespace fogsim::fognode
