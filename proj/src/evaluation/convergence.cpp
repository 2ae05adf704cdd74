#include "queuerl/evaluation/convergence.hpp"

#include <cmath>

#include "queuerl/agent/training.hpp"
#include "queuerl/evaluation/burn_in.hpp"
#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

std::optional<StopReason> check_stop(std::span<const double> series, std::size_t window_size, double threshold,
                                     std::size_t consecutive_points) {
  if (consecutive_points == 0) return std::nullopt;
  const std::vector<double> smoothed = trailing_moving_average(series, std::max<std::size_t>(window_size, 1));
  if (smoothed.size() < consecutive_points + 1) return std::nullopt;
  bool all_drop = true;
  bool all_flat = true;
  for (std::size_t k = smoothed.size() - consecutive_points; k < smoothed.size(); ++k) {
    const double d = smoothed[k] - smoothed[k - 1];
    all_drop = all_drop && d < -threshold;
    all_flat = all_flat && std::abs(d) < threshold;
  }
  if (all_drop) return StopReason::kLocalMaximum;
  if (all_flat) return StopReason::kPlateau;
  return std::nullopt;
}

ConvergenceReport convergence_train(const AgentParams& params, const TopologyConfig& config,
                                    const EnvOptions& options, std::size_t window_size, double threshold,
                                    std::size_t consecutive_points) {
  RlEnv env(config, options, params.seed);
  DdpgAgent agent(env.state_dim(), env.action_dim(), params);
  Trainer trainer(agent, env);
  // Every evaluation uses the same fresh environment.
  const std::uint64_t eval_seed = episode_seed(params.seed, -2);

  ConvergenceReport report;
  std::vector<double> series;
  while (trainer.episodes_run() < params.num_episodes) {
    trainer.run_episodes(std::min(kConvergenceInterval, params.num_episodes - trainer.episodes_run()));
    const double reward = evaluate_policy(agent, config, options, eval_seed);
    report.points.push_back({trainer.episodes_run(), reward});
    series.push_back(reward);
    report.stop_reason = check_stop(series, window_size, threshold, consecutive_points);
    if (report.stop_reason) break;
  }
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    if (series[i] > series[i - 1] && series[i] > series[i + 1]) {
      report.first_local_maximum_episode = report.points[i].episode;
      break;
    }
  }
  return report;
}

}  // namespace queuerl
