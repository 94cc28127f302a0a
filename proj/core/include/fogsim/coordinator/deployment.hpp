#pragma once

#include <map>
#include <span>
#include <string>

#include "fogsim/fognode/dataflow.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::coordinator {

// Application packaged by the orchestration (OSS) servers for init-time
// deployment.
struct ApplicationImage {
  std::string app_id;
  fognode::DataflowGraph flow;
  topology::Layer target = topology::Layer::kFog;
};

struct FlowInstance {
  std::string instance_id;  // "<app_id>@<node>"
  fognode::DataflowGraph flow;

  bool operator==(const FlowInstance& other) const;
};

// Places one instance of the template on every node of the image's target
// layer. Pure function of its inputs, so repeated deployment is idempotent.
std::map<topology::NodeId, FlowInstance> deploy_application(const ApplicationImage& image,
                                                            std::span<const topology::NodeRecord> nodes);

}  // namespace fogsim::coordinator
