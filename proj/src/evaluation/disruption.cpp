#include "queuerl/evaluation/disruption.hpp"

#include <algorithm>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

namespace {

double phase_throughput(const std::vector<RolloutStep>& steps, double start_clock, std::int64_t start_exits) {
  if (steps.empty()) return 0.0;
  const double elapsed = steps.back().clock - start_clock;
  if (elapsed <= 0.0) return 0.0;
  return static_cast<double>(steps.back().exits - start_exits) / elapsed;
}

}  // namespace

DisruptionReport evaluate_disruption(const DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                                     NodeId node, int steps, std::uint64_t seed) {
  const auto blockable = config.blockable_nodes();
  if (std::find(blockable.begin(), blockable.end(), node) == blockable.end()) {
    throw UnknownNode("node " + std::to_string(node) + " cannot be blocked in this topology");
  }
  if (steps < 1) throw ConfigError("disruption evaluation needs at least one step per phase");

  RlEnv env(config, options, seed);
  DisruptionReport report;
  report.affected_node = node;
  report.pre_steps = rollout(agent, env, steps);
  report.pre_probas = report.pre_steps.back().transition_probas;
  report.pre_throughput = phase_throughput(report.pre_steps, 0.0, 0);

  const double split_clock = env.network().clock();
  const std::int64_t split_exits = env.network().total_exits();
  env.network().set_blockage(node);
  report.post_steps = rollout(agent, env, steps);
  report.post_probas = report.post_steps.back().transition_probas;
  report.post_throughput = phase_throughput(report.post_steps, split_clock, split_exits);
  return report;
}

}  // namespace queuerl
