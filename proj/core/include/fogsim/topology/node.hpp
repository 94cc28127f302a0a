#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fogsim/sim/time.hpp"
#include "fogsim/topology/geometry.hpp"

namespace fogsim::topology {

enum class Layer : std::uint8_t { kTerminal = 0, kFog = 1, kFnc = 2, kCloud = 3 };

std::string_view to_string(Layer layer);
std::optional<Layer> parse_layer(std::string_view text);

struct NodeId {
  Layer layer = Layer::kTerminal;
  std::uint32_t ordinal = 0;

  constexpr auto operator<=>(const NodeId&) const = default;

  // Stable 64-bit key, used for seeding per-node random streams.
  constexpr std::uint64_t key() const {
    return (static_cast<std::uint64_t>(layer) << 32) | ordinal;
  }
};

// "T3", "F0", "C1", "K0" (terminal, fog, coordinator, cloud).
std::string to_string(NodeId id);

struct ResourceProfile {
  double capacity = 1.0;      // abstract compute units
  std::uint32_t queue_len = 0;
  double service_rate = 1.0;  // jobs per virtual second

  bool has_room() const { return static_cast<double>(queue_len) < capacity; }
  void validate() const;
};

struct NodeStatus {
  NodeId node;
  Point2D location;
  ResourceProfile resources;
  sim::SimTime reported_at;
};

struct NodeRecord {
  NodeId id;
  Point2D location;
  ResourceProfile resources;
};

}  // namespace fogsim::topology

template <>
struct std::hash<fogsim::topology::NodeId> {
  std::size_t operator()(const fogsim::topology::NodeId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.key());
  }
};
