#pragma once

#include <cstdint>
#include <vector>

#include "queuerl/rl_env/rl_env.hpp"
#include "queuerl/tuning/search_space.hpp"

namespace queuerl {

struct TrialResult {
  int trial = 0;  // index in sampling order
  AgentParams params;
  std::uint64_t train_seed = 0;
  double objective = 0.0;  // total reward of a 100-step frozen-policy rollout
};

// Samples every trial's parameters first, then trains trial k with seed
// base_params.seed + k (params.seed itself is left as sampled). Results are sorted by objective, best first.
std::vector<TrialResult> random_search(const SearchSpace& space, const TopologyConfig& config,
                                       const EnvOptions& options, const AgentParams& base_params,
                                       std::uint64_t seed);

}  // namespace queuerl
