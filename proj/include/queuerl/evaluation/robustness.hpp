#pragma once

#include <cstdint>
#include <vector>

#include "queuerl/agent/params.hpp"
#include "queuerl/rl_env/rl_env.hpp"

namespace queuerl {

struct RobustnessReport {
  std::vector<TransitionMap> per_agent_final_probas;
  double sigma = 0.0;
  double z = 0.0;
  double margin = 0.0;
  int required_runs = 1;
};

// max(1, ceil((z * sigma / margin)^2)).
int required_runs(double z, double sigma, double margin);

// Largest across-map sample standard deviation of any (node, successor) entry.
double max_probability_std(const std::vector<TransitionMap>& maps);

struct RobustnessOptions {
  int num_agents = 10;
  int time_steps = 100;
  double z = 1.96;
  double margin = 1.0;
  bool distinct_seeds = true;  // agent k trains with params.seed + k
  unsigned threads = 0;        // 0 picks hardware_concurrency
};

// Trains the agents independently, then runs each for time_steps greedy
// actions in identically seeded fresh environments and compares the final
// routing maps.
RobustnessReport robustness_evaluate(const AgentParams& params, const TopologyConfig& config,
                                     const EnvOptions& env_options, const RobustnessOptions& options);

}  // namespace queuerl
