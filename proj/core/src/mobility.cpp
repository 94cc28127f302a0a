#include "fogsim/scenario/mobility.hpp"

#include <cmath>

#include "fogsim/error.hpp"
#include "fogsim/topology/placement.hpp"

namespace fogsim::scenario {

namespace {

topology::Point2D draw_point(const topology::Arena& arena, sim::RngStream& rng) {
  const double ur = rng.uniform();
  const double ua = rng.uniform();
  return topology::uniform_in_disk(arena.radius(), ur, ua);
}

void aim(MobilityState& s, double speed) {
  const double dx = s.waypoint.x - s.position.x;
  const double dy = s.waypoint.y - s.position.y;
  const double d = std::hypot(dx, dy);
  if (d == 0.0 || speed == 0.0) {
    s.vx = s.vy = 0.0;
    return;
  }
  s.vx = speed * dx / d;
  s.vy = speed * dy / d;
}

}  // namespace

double MobilityState::speed() const { return std::hypot(vx, vy); }

MobilityState initial_mobility(const topology::Arena& arena, double speed_mps, sim::RngStream& rng) {
  MobilityState s;
  s.position = draw_point(arena, rng);
  s.waypoint = draw_point(arena, rng);
  aim(s, speed_mps);
  return s;
}

MobilityState step_mobility(const MobilityState& state, sim::SimTime dt, const topology::Arena& arena,
                            sim::RngStream& rng) {
  if (!(dt.ms > 0.0)) throw Error(ErrorCode::kInvalidArgument, "mobility step must be > 0");
  MobilityState next = state;
  const double speed = state.speed();
  if (speed == 0.0) return next;
  const double seconds = dt.ms / 1000.0;
  const double remaining = topology::distance(state.position, state.waypoint);
  if (remaining <= speed * seconds) {
    next.position = state.waypoint;
    next.waypoint = draw_point(arena, rng);
    aim(next, speed);
    return next;
  }
  next.position = {state.position.x + state.vx * seconds, state.position.y + state.vy * seconds};
  return next;
}

}  // namespace fogsim::scenario
