#pragma once

#include <cstdint>
#include <vector>

#include "queuerl/agent/ddpg_agent.hpp"

namespace queuerl {

// Horizon of a frozen-policy evaluation, in timesteps.
inline constexpr int kEvaluationTimesteps = 100;

struct RolloutStep {
  double reward = 0.0;
  TransitionMap transition_probas;
  double clock = 0.0;
  std::int64_t exits = 0;
  double throughput_rate = 0.0;  // cumulative exits / elapsed simulated time
};

// Greedy (noise-free) actions from the environment's current state.
std::vector<RolloutStep> rollout(const DdpgAgent& agent, RlEnv& env, int steps);

// Total reward of `steps` greedy actions in a fresh environment.
double evaluate_policy(const DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                       std::uint64_t seed, int steps = kEvaluationTimesteps);

}  // namespace queuerl
