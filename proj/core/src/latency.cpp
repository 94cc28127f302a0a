#include "fogsim/sim/latency.hpp"

#include "fogsim/error.hpp"

namespace fogsim::sim {

void LatencyModel::validate() const {
  if (!(base_ms >= 0.0) || !(prop_ms_per_m >= 0.0) || !(proc_ms_per_unit >= 0.0)) {
    throw Error(ErrorCode::kInvalidValue, "latency coefficients must be >= 0");
  }
}

SimTime link_latency(const LatencyModel& model, const topology::Point2D& src,
                     const topology::Point2D& dst, double receiver_load) {
  return SimTime{model.base_ms + model.prop_ms_per_m * topology::distance(src, dst) +
                 model.proc_ms_per_unit * receiver_load};
}

}  // namespace fogsim::sim
