#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "queuerl/agent/adam.hpp"
#include "queuerl/agent/mlp.hpp"
#include "queuerl/agent/params.hpp"
#include "queuerl/agent/replay_buffer.hpp"

namespace queuerl {

// A batch of transitions in network feature space, one column per sample.
struct TransitionBatch {
  Eigen::MatrixXd states;       // state_dim x B (transformed)
  Eigen::MatrixXd actions;      // action_dim x B
  Eigen::RowVectorXd rewards;   // 1 x B
  Eigen::MatrixXd next_states;  // state_dim x B (transformed)
};

// DDPG with Dyna-style planning. The environment model is two independent
// networks: one predicts the next state, the other the reward.
class DdpgAgent {
 public:
  DdpgAgent(std::size_t state_dim, std::size_t action_dim, AgentParams params);

  ActionVector select_action(const StateVector& state) const;
  ActionVector explore_action(const StateVector& state, double noise_scale, std::mt19937_64& rng) const;

  // One gradient step each; both return the loss before the step.
  double update_critic_network(std::span<const Experience> batch);
  double update_actor_network(std::span<const Experience> batch);
  double update_critic_network(const TransitionBatch& batch);
  double update_actor_network(const TransitionBatch& batch);

  void soft_update_targets();
  // Counts one learning step; soft-updates the targets every
  // target_update_frequency calls. Returns true when an update happened.
  bool advance_target_schedule();

  // Trains both predictors over the whole buffer for num_epochs epochs.
  // Returns the final-epoch (next-state loss, reward loss).
  std::pair<double, double> fit_model();

  // planning_steps rounds of critic and actor updates on hallucinated
  // transitions built from buffered states.
  void plan(std::mt19937_64& rng);

  void remember(Experience experience);

  TransitionBatch to_batch(std::span<const Experience> batch) const;
  Eigen::VectorXd features(const StateVector& state) const;
  // Reward as seen by the critic and the reward model.
  double learning_reward(double reward) const;

  const AgentParams& params() const { return params_; }
  std::size_t state_dim() const { return state_dim_; }
  std::size_t action_dim() const { return action_dim_; }
  ReplayBuffer& buffer() { return buffer_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::mt19937_64& rng() { return rng_; }

  Mlp& actor() { return actor_; }
  Mlp& critic() { return critic_; }
  Mlp& target_actor() { return target_actor_; }
  Mlp& target_critic() { return target_critic_; }
  Mlp& next_state_model() { return next_state_model_; }
  Mlp& reward_model() { return reward_model_; }
  const Mlp& actor() const { return actor_; }
  const Mlp& critic() const { return critic_; }
  const Mlp& target_actor() const { return target_actor_; }
  const Mlp& target_critic() const { return target_critic_; }
  const Mlp& next_state_model() const { return next_state_model_; }
  const Mlp& reward_model() const { return reward_model_; }

  // Number of critic/actor gradient steps taken so far (real and planned).
  std::int64_t network_updates() const { return network_updates_; }
  std::int64_t update_counter() const { return update_counter_; }

  // Rebuilds optimizer state after networks are replaced (e.g. on load).
  void reset_optimizers();

 private:
  Eigen::MatrixXd critic_input(const Eigen::MatrixXd& states, const Eigen::MatrixXd& actions) const;
  std::pair<double, double> fit_epoch(std::vector<std::size_t>& order);

  std::size_t state_dim_;
  std::size_t action_dim_;
  AgentParams params_;
  std::mt19937_64 rng_;
  Mlp actor_, critic_, target_actor_, target_critic_, next_state_model_, reward_model_;
  Adam actor_opt_, critic_opt_, next_state_opt_, reward_opt_;
  ReplayBuffer buffer_;
  std::int64_t update_counter_ = 0;
  std::int64_t network_updates_ = 0;
};

}  // namespace queuerl
