#pragma once

#include <cstdint>
#include <vector>

#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

struct DisruptionReport {
  NodeId affected_node = 0;
  TransitionMap pre_probas;   // routing at the end of the unblocked phase
  TransitionMap post_probas;  // routing at the end of the blocked phase
  double pre_throughput = 0.0;   // exits per unit time during the unblocked phase
  double post_throughput = 0.0;  // exits per unit time during the blocked phase
  std::vector<RolloutStep> pre_steps;
  std::vector<RolloutStep> post_steps;
};

// Runs `steps` greedy actions, blocks `node`, and runs `steps` more in the
// same environment. Throws UnknownNode for a node that cannot be blocked.
DisruptionReport evaluate_disruption(const DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                                     NodeId node, int steps, std::uint64_t seed);

}  // namespace queuerl
