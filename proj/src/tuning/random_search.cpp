#include "queuerl/tuning/random_search.hpp"

#include <algorithm>

#include "queuerl/agent/training.hpp"
#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

std::vector<TrialResult> random_search(const SearchSpace& space, const TopologyConfig& config,
                                       const EnvOptions& options, const AgentParams& base_params,
                                       std::uint64_t seed) {
  space.validate();
  config.validate();
  std::mt19937_64 rng(seed);
  std::vector<TrialResult> results;
  for (int k = 0; k < space.trials; ++k) {
    TrialResult r;
    r.trial = k;
    r.params = space.sample(base_params, rng);
    r.train_seed = base_params.seed + static_cast<std::uint64_t>(k);
    r.params.validate();
    results.push_back(std::move(r));
  }
  for (TrialResult& r : results) {
    AgentParams p = r.params;
    p.seed = r.train_seed;
    RlEnv env(config, options, p.seed);
    DdpgAgent agent(env.state_dim(), env.action_dim(), p);
    train(agent, env);
    r.objective = evaluate_policy(agent, config, options, episode_seed(p.seed, -2));
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const TrialResult& a, const TrialResult& b) { return a.objective > b.objective; });
  return results;
}

}  // namespace queuerl
