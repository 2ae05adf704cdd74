#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace queuerl {

// How raw delay states are fed to the networks.
enum class StateTransform { kIdentity, kLog1p };
// How rewards are fed to the critic and the reward model. symlog maps r to
// sign(r) * log1p(|r|).
enum class RewardTransform { kIdentity, kSymlog };

struct AgentParams {
  double learning_rate = 1e-3;
  int num_epochs = 1;
  int batch_size = 32;
  int planning_steps = 1;
  int num_samples = 32;
  int num_episodes = 100;
  int num_timesteps = 50;
  int target_update_frequency = 1;
  double tau = 0.01;
  double gamma = 0.9;
  double epsilon = 0.1;  // Gaussian action noise, for planning and for real steps
  double action_logit_penalty = 0.0;  // L2 weight on the actor's pre-sigmoid outputs
  double w1 = 0.5;       // weight of normal episode starts
  double w2 = 0.5;       // weight of blocked episode starts
  int buffer_capacity = 2000;
  std::uint64_t seed = 0;
  std::vector<int> hidden_layers{64, 64};
  StateTransform state_transform = StateTransform::kLog1p;
  RewardTransform reward_transform = RewardTransform::kIdentity;

  // Throws ConfigError on out-of-domain values.
  void validate() const;

  friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

std::string to_string(StateTransform t);
StateTransform state_transform_from_string(const std::string& name);
std::string to_string(RewardTransform t);
RewardTransform reward_transform_from_string(const std::string& name);

}  // namespace queuerl
