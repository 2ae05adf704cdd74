#include "queuerl/agent/ddpg_agent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

void AgentParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(learning_rate > 0.0, "learning_rate must be > 0");
  require(num_epochs >= 1, "num_epochs must be >= 1");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(planning_steps >= 0, "planning_steps must be >= 0");
  require(num_samples >= 1, "num_samples must be >= 1");
  require(num_episodes >= 1, "num_episodes must be >= 1");
  require(num_timesteps >= 1, "num_timesteps must be >= 1");
  require(target_update_frequency >= 1, "target_update_frequency must be >= 1");
  require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  require(epsilon >= 0.0, "epsilon must be >= 0");
  require(action_logit_penalty >= 0.0, "action_logit_penalty must be >= 0");
  require(w1 >= 0.0 && w2 >= 0.0, "w1 and w2 must be >= 0");
  require(w1 + w2 > 0.0, "w1 + w2 must be > 0");
  require(buffer_capacity >= 1, "buffer_capacity must be >= 1");
  for (int h : hidden_layers) require(h >= 1, "hidden layer sizes must be >= 1");
}

std::string to_string(StateTransform t) { return t == StateTransform::kLog1p ? "log1p" : "identity"; }

StateTransform state_transform_from_string(const std::string& name) {
  if (name == "log1p") return StateTransform::kLog1p;
  if (name == "identity") return StateTransform::kIdentity;
  throw ConfigError("unknown state_transform '" + name + "' (expected identity or log1p)");
}

std::string to_string(RewardTransform t) { return t == RewardTransform::kSymlog ? "symlog" : "identity"; }

RewardTransform reward_transform_from_string(const std::string& name) {
  if (name == "symlog") return RewardTransform::kSymlog;
  if (name == "identity") return RewardTransform::kIdentity;
  throw ConfigError("unknown reward_transform '" + name + "' (expected identity or symlog)");
}

namespace {

std::vector<int> shape(std::size_t in, const std::vector<int>& hidden, std::size_t out) {
  std::vector<int> sizes{static_cast<int>(in)};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(static_cast<int>(out));
  return sizes;
}

}  // namespace

DdpgAgent::DdpgAgent(std::size_t state_dim, std::size_t action_dim, AgentParams params)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      params_(std::move(params)),
      rng_(params_.seed),
      buffer_(static_cast<std::size_t>(std::max(1, params_.buffer_capacity))) {
  params_.validate();
  if (state_dim_ == 0 || action_dim_ == 0) throw DimensionMismatch("state and action dimensions must be positive");
  const auto& hidden = params_.hidden_layers;
  actor_ = Mlp(shape(state_dim_, hidden, action_dim_), OutputActivation::kSigmoid, rng_);
  critic_ = Mlp(shape(state_dim_ + action_dim_, hidden, 1), OutputActivation::kIdentity, rng_);
  next_state_model_ = Mlp(shape(state_dim_ + action_dim_, hidden, state_dim_), OutputActivation::kIdentity, rng_);
  reward_model_ = Mlp(shape(state_dim_ + action_dim_, hidden, 1), OutputActivation::kIdentity, rng_);
  target_actor_ = actor_;
  target_critic_ = critic_;
  reset_optimizers();
}

void DdpgAgent::reset_optimizers() {
  actor_opt_ = Adam(actor_, params_.learning_rate);
  critic_opt_ = Adam(critic_, params_.learning_rate);
  next_state_opt_ = Adam(next_state_model_, params_.learning_rate);
  reward_opt_ = Adam(reward_model_, params_.learning_rate);
}

Eigen::VectorXd DdpgAgent::features(const StateVector& state) const {
  if (state.delays.size() != state_dim_) {
    throw DimensionMismatch("state has " + std::to_string(state.delays.size()) + " entries, expected " +
                            std::to_string(state_dim_));
  }
  Eigen::VectorXd x(static_cast<Eigen::Index>(state_dim_));
  for (std::size_t i = 0; i < state_dim_; ++i) {
    const double d = state.delays[i];
    x(static_cast<Eigen::Index>(i)) = params_.state_transform == StateTransform::kLog1p ? std::log1p(d) : d;
  }
  return x;
}

double DdpgAgent::learning_reward(double reward) const {
  if (params_.reward_transform == RewardTransform::kIdentity) return reward;
  return std::copysign(std::log1p(std::abs(reward)), reward);
}

ActionVector DdpgAgent::select_action(const StateVector& state) const {
  const Eigen::MatrixXd out = actor_.forward(features(state));
  ActionVector action;
  action.weights.assign(out.data(), out.data() + out.size());
  return action;
}

ActionVector DdpgAgent::explore_action(const StateVector& state, double noise_scale, std::mt19937_64& rng) const {
  ActionVector action = select_action(state);
  if (noise_scale <= 0.0) return action;
  std::normal_distribution<double> noise(0.0, noise_scale);
  for (double& w : action.weights) w = std::clamp(w + noise(rng), 0.0, 1.0);
  return action;
}

TransitionBatch DdpgAgent::to_batch(std::span<const Experience> batch) const {
  const auto n = static_cast<Eigen::Index>(batch.size());
  TransitionBatch out;
  out.states.resize(static_cast<Eigen::Index>(state_dim_), n);
  out.next_states.resize(static_cast<Eigen::Index>(state_dim_), n);
  out.actions.resize(static_cast<Eigen::Index>(action_dim_), n);
  out.rewards.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Experience& e = batch[static_cast<std::size_t>(j)];
    if (e.action.weights.size() != action_dim_) {
      throw DimensionMismatch("experience action has " + std::to_string(e.action.weights.size()) +
                              " entries, expected " + std::to_string(action_dim_));
    }
    out.states.col(j) = features(e.state);
    out.next_states.col(j) = features(e.next_state);
    for (std::size_t i = 0; i < action_dim_; ++i) out.actions(static_cast<Eigen::Index>(i), j) = e.action.weights[i];
    out.rewards(j) = learning_reward(e.reward);
  }
  return out;
}

Eigen::MatrixXd DdpgAgent::critic_input(const Eigen::MatrixXd& states, const Eigen::MatrixXd& actions) const {
  Eigen::MatrixXd x(states.rows() + actions.rows(), states.cols());
  x << states, actions;
  return x;
}

double DdpgAgent::update_critic_network(std::span<const Experience> batch) {
  if (batch.empty()) throw InsufficientBuffer("critic update needs a nonempty batch");
  return update_critic_network(to_batch(batch));
}

double DdpgAgent::update_actor_network(std::span<const Experience> batch) {
  if (batch.empty()) throw InsufficientBuffer("actor update needs a nonempty batch");
  return update_actor_network(to_batch(batch));
}

double DdpgAgent::update_critic_network(const TransitionBatch& batch) {
  const Eigen::MatrixXd next_actions = target_actor_.forward(batch.next_states);
  const Eigen::MatrixXd next_q = target_critic_.forward(critic_input(batch.next_states, next_actions));
  const Eigen::MatrixXd targets = batch.rewards + params_.gamma * next_q;

  Mlp::Tape tape;
  const Eigen::MatrixXd q = critic_.forward(critic_input(batch.states, batch.actions), tape);
  const double loss = mse(q, targets);
  critic_opt_.step(critic_, critic_.backward(tape, mse_gradient(q, targets)));
  ++network_updates_;
  return loss;
}

double DdpgAgent::update_actor_network(const TransitionBatch& batch) {
  Mlp::Tape actor_tape;
  const Eigen::MatrixXd actions = actor_.forward(batch.states, actor_tape);
  Mlp::Tape critic_tape;
  const Eigen::MatrixXd q = critic_.forward(critic_input(batch.states, actions), critic_tape);
  const double n = static_cast<double>(q.cols());
  double loss = -q.sum() / n;

  Eigen::MatrixXd grad_input;
  const Eigen::MatrixXd grad_q = Eigen::MatrixXd::Constant(1, q.cols(), -1.0 / n);
  critic_.backward(critic_tape, grad_q, &grad_input);  // critic gradients discarded
  const Eigen::MatrixXd grad_actions = grad_input.bottomRows(static_cast<Eigen::Index>(action_dim_));
  Eigen::MatrixXd grad_logits = grad_actions.cwiseProduct(actions.cwiseProduct((1.0 - actions.array()).matrix()));
  if (params_.action_logit_penalty > 0.0) {
    // penalty * mean over samples of the squared logit norm
    const Eigen::MatrixXd z = actor_.output_logits(actor_tape);
    loss += params_.action_logit_penalty * z.squaredNorm() / n;
    grad_logits += (2.0 * params_.action_logit_penalty / n) * z;
  }
  actor_opt_.step(actor_, actor_.backward_from_logits(actor_tape, grad_logits));
  ++network_updates_;
  return loss;
}

void DdpgAgent::soft_update_targets() {
  soft_update(target_actor_, actor_, params_.tau);
  soft_update(target_critic_, critic_, params_.tau);
}

bool DdpgAgent::advance_target_schedule() {
  ++update_counter_;
  if (update_counter_ % params_.target_update_frequency != 0) return false;
  soft_update_targets();
  return true;
}

void DdpgAgent::remember(Experience experience) {
  if (experience.state.delays.size() != state_dim_ || experience.next_state.delays.size() != state_dim_ ||
      experience.action.weights.size() != action_dim_) {
    throw DimensionMismatch("experience does not match the agent's dimensions");
  }
  buffer_.push(std::move(experience));
}

std::pair<double, double> DdpgAgent::fit_model() {
  if (buffer_.empty()) throw EmptyBuffer("fit_model needs at least one stored experience");
  std::vector<std::size_t> order(buffer_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::pair<double, double> losses{0.0, 0.0};
  for (int epoch = 0; epoch < params_.num_epochs; ++epoch) losses = fit_epoch(order);
  return losses;
}

std::pair<double, double> DdpgAgent::fit_epoch(std::vector<std::size_t>& order) {
  std::shuffle(order.begin(), order.end(), rng_);
  const std::size_t batch = static_cast<std::size_t>(params_.batch_size);
  double state_loss = 0.0;
  double reward_loss = 0.0;
  std::vector<Experience> chunk;
  for (std::size_t start = 0; start < order.size(); start += batch) {
    const std::size_t end = std::min(order.size(), start + batch);
    chunk.clear();
    for (std::size_t k = start; k < end; ++k) chunk.push_back(buffer_[order[k]]);
    const TransitionBatch tb = to_batch(chunk);
    const Eigen::MatrixXd x = critic_input(tb.states, tb.actions);
    const double weight = static_cast<double>(end - start);

    Mlp::Tape tape;
    const Eigen::MatrixXd s_pred = next_state_model_.forward(x, tape);
    state_loss += weight * mse(s_pred, tb.next_states);
    next_state_opt_.step(next_state_model_, next_state_model_.backward(tape, mse_gradient(s_pred, tb.next_states)));

    const Eigen::MatrixXd r_pred = reward_model_.forward(x, tape);
    reward_loss += weight * mse(r_pred, tb.rewards);
    reward_opt_.step(reward_model_, reward_model_.backward(tape, mse_gradient(r_pred, tb.rewards)));
  }
  const double n = static_cast<double>(order.size());
  return {state_loss / n, reward_loss / n};
}

void DdpgAgent::plan(std::mt19937_64& rng) {
  if (params_.planning_steps == 0) return;
  if (buffer_.size() < static_cast<std::size_t>(params_.batch_size)) {
    throw InsufficientBuffer("planning needs at least batch_size buffered experiences");
  }
  const std::size_t samples = std::min(buffer_.size(), static_cast<std::size_t>(params_.num_samples));
  for (int step = 0; step < params_.planning_steps; ++step) {
    const std::vector<Experience> drawn = buffer_.sample(samples, rng);
    TransitionBatch hallucinated;
    hallucinated.states.resize(static_cast<Eigen::Index>(state_dim_), static_cast<Eigen::Index>(samples));
    hallucinated.actions.resize(static_cast<Eigen::Index>(action_dim_), static_cast<Eigen::Index>(samples));
    for (std::size_t j = 0; j < samples; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      hallucinated.states.col(col) = features(drawn[j].state);
      const ActionVector a = explore_action(drawn[j].state, params_.epsilon, rng);
      for (std::size_t i = 0; i < action_dim_; ++i) {
        hallucinated.actions(static_cast<Eigen::Index>(i), col) = a.weights[i];
      }
    }
    const Eigen::MatrixXd x = critic_input(hallucinated.states, hallucinated.actions);
    hallucinated.rewards = reward_model_.forward(x);
    hallucinated.next_states = next_state_model_.forward(x);
    update_critic_network(hallucinated);
    update_actor_network(hallucinated);
  }
}

}  // namespace queuerl
