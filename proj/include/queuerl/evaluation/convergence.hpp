#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "queuerl/agent/params.hpp"
#include "queuerl/rl_env/rl_env.hpp"

namespace queuerl {

// Episodes trained between two evaluations.
inline constexpr int kConvergenceInterval = 10;

enum class StopReason { kLocalMaximum, kPlateau };

// Early-stopping rule over an evaluation series. Let d be the last
// `consecutive_points` differences of the (window-smoothed) series:
//   every d < -threshold      -> kLocalMaximum
//   every |d| < threshold     -> kPlateau
// Returns nullopt when neither holds or the series is too short.
std::optional<StopReason> check_stop(std::span<const double> series, std::size_t window_size, double threshold,
                                     std::size_t consecutive_points);

struct ConvergencePoint {
  int episode = 0;  // episodes trained so far
  double eval_reward = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;
  std::optional<StopReason> stop_reason;  // unset when the episode budget ran out
  std::optional<int> first_local_maximum_episode;
};

// Trains in blocks of kConvergenceInterval episodes (up to
// params.num_episodes) and evaluates the frozen policy for 100 timesteps after
// each block, stopping early per check_stop.
ConvergenceReport convergence_train(const AgentParams& params, const TopologyConfig& config,
                                    const EnvOptions& options, std::size_t window_size, double threshold,
                                    std::size_t consecutive_points);

}  // namespace queuerl
