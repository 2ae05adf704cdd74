#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

std::vector<RolloutStep> rollout(const DdpgAgent& agent, RlEnv& env, int steps) {
  std::vector<RolloutStep> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  StateVector state = env.get_state();
  for (int t = 0; t < steps; ++t) {
    state = env.get_next_state(agent.select_action(state));
    const QueueNetwork& net = env.network();
    RolloutStep step;
    step.reward = env.get_reward();
    step.transition_probas = net.transition_map();
    step.clock = net.clock();
    step.exits = net.total_exits();
    step.throughput_rate = step.clock > 0.0 ? static_cast<double>(step.exits) / step.clock : 0.0;
    out.push_back(std::move(step));
  }
  return out;
}

double evaluate_policy(const DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                       std::uint64_t seed, int steps) {
  RlEnv env(config, options, seed);
  double total = 0.0;
  for (const RolloutStep& s : rollout(agent, env, steps)) total += s.reward;
  return total;
}

}  // namespace queuerl
