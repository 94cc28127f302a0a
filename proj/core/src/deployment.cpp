#include "fogsim/coordinator/deployment.hpp"

namespace fogsim::coordinator {

bool FlowInstance::operator==(const FlowInstance& other) const {
  if (instance_id != other.instance_id || flow.placement != other.flow.placement ||
      flow.edges != other.flow.edges || flow.operators.size() != other.flow.operators.size()) {
    return false;
  }
  for (std::size_t i = 0; i < flow.operators.size(); ++i) {
    if (flow.operators[i].id != other.flow.operators[i].id ||
        flow.operators[i].kind != other.flow.operators[i].kind) {
      return false;
    }
  }
  return true;
}

std::map<topology::NodeId, FlowInstance> deploy_application(const ApplicationImage& image,
                                                            std::span<const topology::NodeRecord> nodes) {
  image.flow.validate();
  std::map<topology::NodeId, FlowInstance> placement;
  for (const auto& rec : nodes) {
    if (rec.id.layer != image.target) continue;
    placement[rec.id] = {image.app_id + "@" + topology::to_string(rec.id), image.flow.placed_on(rec.id)};
  }
  return placement;
}

}  // namespace fogsim::coordinator
