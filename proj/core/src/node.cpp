#include "fogsim/topology/node.hpp"

#include "fogsim/error.hpp"

namespace fogsim::topology {

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::kTerminal: return "terminal";
    case Layer::kFog: return "fog";
    case Layer::kFnc: return "fnc";
    case Layer::kCloud: return "cloud";
  }
  return "unknown";
}

std::optional<Layer> parse_layer(std::string_view text) {
  if (text == "terminal") return Layer::kTerminal;
  if (text == "fog") return Layer::kFog;
  if (text == "fnc") return Layer::kFnc;
  if (text == "cloud") return Layer::kCloud;
  return std::nullopt;
}

std::string to_string(NodeId id) {
  char prefix = '?';
  switch (id.layer) {
    case Layer::kTerminal: prefix = 'T'; break;
    case Layer::kFog: prefix = 'F'; break;
    case Layer::kFnc: prefix = 'C'; break;
    case Layer::kCloud: prefix = 'K'; break;
  }
  return prefix + std::to_string(id.ordinal);
}

void ResourceProfile::validate() const {
  if (!(capacity > 0.0)) throw Error(ErrorCode::kInvalidValue, "capacity must be > 0");
  if (!(service_rate > 0.0)) throw Error(ErrorCode::kInvalidValue, "service_rate must be > 0");
}

}  // namespace fogsim::topology
