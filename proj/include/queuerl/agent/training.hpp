#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "queuerl/agent/ddpg_agent.hpp"

namespace queuerl {

struct LossRecord {
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  double next_state_loss = 0.0;
  double reward_loss = 0.0;
};

struct EpisodeTrace {
  StartMode mode;
  std::vector<double> rewards;                  // one per timestep
  std::vector<TransitionMap> transition_probas;  // routing applied at each timestep
  double average_reward() const;
};

struct TrainingTrace {
  std::vector<EpisodeTrace> episodes;
  std::vector<LossRecord> losses;  // one per learning step
};

// Picks the start mode of an episode.
using StartModeChooser = std::function<StartMode(int episode, std::mt19937_64& rng)>;
// Called after every environment step.
using StepObserver = std::function<void(int episode, const StartMode& mode, const StateVector& state, double reward)>;

// Environment seed used for episode `episode` of a run seeded with `seed`.
std::uint64_t episode_seed(std::uint64_t seed, std::int64_t episode);

// Incremental form of train(): episodes can be run in several blocks, e.g.
// to evaluate the policy in between.
class Trainer {
 public:
  Trainer(DdpgAgent& agent, RlEnv& env, StartModeChooser chooser = {}, StepObserver observer = {});

  void run_episodes(int count);
  const TrainingTrace& trace() const { return trace_; }
  TrainingTrace take_trace() { return std::move(trace_); }
  int episodes_run() const { return static_cast<int>(trace_.episodes.size()); }

 private:
  void run_episode(int episode);

  DdpgAgent& agent_;
  RlEnv& env_;
  StartModeChooser chooser_;
  StepObserver observer_;
  std::mt19937_64 mode_rng_;
  TrainingTrace trace_;
};

// Dyna-DDPG training loop over params.num_episodes episodes of
// params.num_timesteps steps. Without a chooser every episode starts normally.
TrainingTrace train(DdpgAgent& agent, RlEnv& env, const StartModeChooser& chooser = {},
                    const StepObserver& observer = {});

}  // namespace queuerl
