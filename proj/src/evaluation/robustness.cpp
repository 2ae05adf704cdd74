#include "queuerl/evaluation/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "queuerl/agent/training.hpp"
#include "queuerl/errors.hpp"
#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

int required_runs(double z, double sigma, double margin) {
  if (!(margin > 0.0)) throw ConfigError("margin of error must be positive");
  if (sigma < 0.0 || z < 0.0) throw ConfigError("z and sigma must be non-negative");
  const double n = std::ceil(std::pow(z * sigma / margin, 2));
  return std::max(1, static_cast<int>(n));
}

double max_probability_std(const std::vector<TransitionMap>& maps) {
  if (maps.size() < 2) return 0.0;
  const double count = static_cast<double>(maps.size());
  double worst = 0.0;
  for (const auto& [node, row] : maps.front()) {
    for (const auto& [successor, p0] : row) {
      double mean = 0.0;
      for (const TransitionMap& m : maps) mean += m.at(node).at(successor);
      mean /= count;
      double ss = 0.0;
      for (const TransitionMap& m : maps) {
        const double d = m.at(node).at(successor) - mean;
        ss += d * d;
      }
      worst = std::max(worst, std::sqrt(ss / (count - 1.0)));
    }
  }
  return worst;
}

RobustnessReport robustness_evaluate(const AgentParams& params, const TopologyConfig& config,
                                     const EnvOptions& env_options, const RobustnessOptions& options) {
  if (options.num_agents < 2) throw ConfigError("robustness evaluation needs at least two agents");
  if (options.time_steps < 1) throw ConfigError("robustness evaluation needs at least one time step");
  if (!(options.margin > 0.0)) throw ConfigError("margin of error must be positive");
  params.validate();
  config.validate();

  const auto n = static_cast<std::size_t>(options.num_agents);
  std::vector<TransitionMap> finals(n);
  const std::uint64_t eval_seed = episode_seed(params.seed, -3);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        AgentParams p = params;
        if (options.distinct_seeds) p.seed = params.seed + k;
        RlEnv env(config, env_options, p.seed);
        DdpgAgent agent(env.state_dim(), env.action_dim(), p);
        train(agent, env);
        RlEnv eval_env(config, env_options, eval_seed);
        finals[k] = rollout(agent, eval_env, options.time_steps).back().transition_probas;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  RobustnessReport report;
  report.per_agent_final_probas = std::move(finals);
  report.sigma = max_probability_std(report.per_agent_final_probas);
  report.z = options.z;
  report.margin = options.margin;
  report.required_runs = required_runs(options.z, report.sigma, options.margin);
  return report;
}

}  // namespace queuerl
