#pragma once

#include "fogsim/sim/time.hpp"
#include "fogsim/topology/geometry.hpp"

namespace fogsim::sim {

// Affine point-to-point delay: fixed per-hop cost, propagation proportional to
// euclidean distance, and a processing term proportional to receiver load.
struct LatencyModel {
  double base_ms = 1.0;
  double prop_ms_per_m = 0.005;
  double proc_ms_per_unit = 2.0;

  void validate() const;
};

SimTime link_latency(const LatencyModel& model, const topology::Point2D& src,
                     const topology::Point2D& dst, double receiver_load);

}  // namespace fogsim::sim
