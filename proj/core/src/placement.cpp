#include "fogsim/topology/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fogsim/error.hpp"
#include "fogsim/sim/rng.hpp"

namespace fogsim::topology {

namespace {

constexpr std::uint64_t kPlacementStream = 0x706c616365ULL;  // "place"

}  // namespace

Point2D uniform_in_disk(double radius, double u_radius, double u_angle) {
  const double r = radius * std::sqrt(u_radius);
  const double theta = 2.0 * std::numbers::pi * u_angle;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint32_t sector_of(const Point2D& p, std::uint32_t sectors) {
  if (sectors == 0) throw Error(ErrorCode::kInvalidArgument, "sector count must be > 0");
  double angle = std::atan2(p.y, p.x);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const double width = 2.0 * std::numbers::pi / sectors;
  const auto k = static_cast<std::uint32_t>(angle / width);
  return std::min(k, sectors - 1);
}

Point2D sector_centroid(std::uint32_t k, std::uint32_t sectors, double radius) {
  if (sectors == 0 || k >= sectors) throw Error(ErrorCode::kInvalidArgument, "bad sector index");
  const double width = 2.0 * std::numbers::pi / sectors;
  const double half = width / 2.0;
  // Centroid of a circular sector with half-angle a lies at 2 R sin(a) / (3 a)
  // along the bisector.
  const double dist = 2.0 * radius * std::sin(half) / (3.0 * half);
  const double bisector = (k + 0.5) * width;
  return {dist * std::cos(bisector), dist * std::sin(bisector)};
}

std::vector<NodeRecord> place_nodes(const LayerCounts& counts, const Arena& arena,
                                    std::uint64_t seed, const LayerProfiles& profiles) {
  if (!(arena.diameter_m > 0.0)) throw Error(ErrorCode::kInvalidValue, "diameter must be > 0");
  std::vector<NodeRecord> out;
  out.reserve(counts.terminals + counts.fog + counts.fnc + 1);

  auto random_node = [&](Layer layer, std::uint32_t ordinal, const ResourceProfile& prof) {
    const NodeId id{layer, ordinal};
    sim::RngStream rng(seed, sim::derive_seed({kPlacementStream, id.key()}));
    const double ur = rng.uniform();
    const double ua = rng.uniform();
    out.push_back({id, uniform_in_disk(arena.radius(), ur, ua), prof});
  };

  for (std::uint32_t i = 0; i < counts.terminals; ++i) random_node(Layer::kTerminal, i, profiles.terminal);
  for (std::uint32_t i = 0; i < counts.fog; ++i) random_node(Layer::kFog, i, profiles.fog);
  for (std::uint32_t i = 0; i < counts.fnc; ++i) {
    out.push_back({{Layer::kFnc, i}, sector_centroid(i, counts.fnc, arena.radius()), profiles.fnc});
  }
  out.push_back({{Layer::kCloud, 0}, {0.0, 0.0}, profiles.cloud});
  return out;
}

}  // namespace fogsim::topology
