#pragma once

#include <cstdint>
#include <vector>

#include "fogsim/topology/geometry.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::topology {

struct LayerCounts {
  std::uint32_t terminals = 20;
  std::uint32_t fog = 10;
  std::uint32_t fnc = 2;
};

struct LayerProfiles {
  ResourceProfile terminal{1.0, 0, 10.0};
  ResourceProfile fog{4.0, 0, 10.0};
  ResourceProfile fnc{8.0, 0, 200.0};
  ResourceProfile cloud{64.0, 0, 1000.0};
};

// Terminals and fog nodes are uniform over the disk, each drawn from its own
// stream keyed by (seed, node id). Coordinators sit on the centroids of equal
// angular sectors. The single cloud record is placed at the arena center; its
// remoteness is expressed as extra link latency, not as a coordinate.
std::vector<NodeRecord> place_nodes(const LayerCounts& counts, const Arena& arena,
                                    std::uint64_t seed, const LayerProfiles& profiles = {});

// Uniform point in the disk (polar draw with sqrt radius correction).
Point2D uniform_in_disk(double radius, double u_radius, double u_angle);

// Index of the equal angular sector (out of `sectors`) containing p. Sector k
// spans angles [k, k+1) * 2*pi/sectors measured counter-clockwise from +x.
std::uint32_t sector_of(const Point2D& p, std::uint32_t sectors);

// Area centroid of sector k of a disk of the given radius.
Point2D sector_centroid(std::uint32_t k, std::uint32_t sectors, double radius);

}  // namespace fogsim::topology
