#pragma once

#include "fogsim/sim/rng.hpp"
#include "fogsim/sim/time.hpp"
#include "fogsim/topology/geometry.hpp"

namespace fogsim::scenario {

struct MobilityState {
  topology::Point2D position;
  double vx = 0.0;  // m/s
  double vy = 0.0;
  topology::Point2D waypoint;

  double speed() const;
};

// Random-waypoint start: uniform position and waypoint, velocity aimed at the
// waypoint with the given speed.
MobilityState initial_mobility(const topology::Arena& arena, double speed_mps, sim::RngStream& rng);

// Advances by velocity * dt. If the waypoint is reached within this step the
// node stops on it, draws a fresh uniform waypoint and re-aims at the same
// speed. Straight segments between points of a disk stay in the disk.
MobilityState step_mobility(const MobilityState& state, sim::SimTime dt, const topology::Arena& arena,
                            sim::RngStream& rng);

}  // namespace fogsim::scenario
