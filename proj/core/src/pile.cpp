#include "fogsim/fognode/pile.hpp"

#include "fogsim/error.hpp"

namespace fogsim::fognode {

void ScoreWeights::validate() const {
  if (!(w_dist >= 0.0) || !(w_wait >= 0.0) || (w_dist == 0.0 && w_wait == 0.0)) {
    throw Error(ErrorCode::kInvalidValue, "score weights must be >= 0 and not both zero");
  }
}

coordinator::JobResult evaluate_charging_request(const coordinator::ServiceRequest& request,
                                                 const PileState& pile,
                                                 const ScoreWeights& weights) {
  if (!pile.available) {
    throw Error(ErrorCode::kPileUnavailable, topology::to_string(pile.node) + " is unavailable");
  }
  const double wait_h = pile.expected_wait_hours();
  coordinator::JobResult r;
  r.request_id = request.request_id;
  r.responder = pile.node;
  r.score = weights.w_dist * topology::distance(request.origin, pile.location) + weights.w_wait * wait_h;
  r.offer = {pile.location, wait_h * 3.6e6};
  return r;
}

}  // namespace fogsim::fognode
