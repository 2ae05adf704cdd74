#include "queuerl/rl_env/rl_env.hpp"

#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

RlEnv::RlEnv(TopologyConfig config, EnvOptions options, std::uint64_t seed)
    : config_(std::move(config)),
      options_(options),
      serviced_(config_.serviced_edges()),
      net_(config_, seed, options_.noise) {
  if (options_.events_per_step < 1) throw ConfigError("events_per_step must be >= 1");
  for (std::size_t i = 0; i < serviced_.size(); ++i) action_index_[serviced_[i]] = i;
}

StateVector RlEnv::get_state() const {
  StateVector state;
  state.delays.reserve(serviced_.size());
  for (EdgeType type : serviced_) {
    state.delays.push_back(mean_end_to_end_delay(net_.queue_data(type), net_.clock()));
  }
  return state;
}

TransitionMap RlEnv::action_to_transition_probas(const ActionVector& action) const {
  if (action.weights.size() != serviced_.size()) {
    throw DimensionMismatch("action has " + std::to_string(action.weights.size()) + " entries, expected " +
                            std::to_string(serviced_.size()));
  }
  TransitionMap map;
  for (const auto& [source, targets] : config_.edge_list) {
    if (targets.empty()) continue;
    auto& row = map[source];
    double mass = 0.0;
    for (const auto& [target, type] : targets) {
      auto it = action_index_.find(type);
      const double w = it == action_index_.end() ? kExitEdgeWeight : action.weights[it->second];
      row[target] = w;
      mass += w;
    }
    if (mass < kMinWeightMass) {
      for (auto& [target, p] : row) p = 1.0 / static_cast<double>(targets.size());
    } else {
      for (auto& [target, p] : row) p /= mass;
    }
  }
  return map;
}

StateVector RlEnv::get_next_state(const ActionVector& action) {
  net_.set_transition_map(action_to_transition_probas(action));
  net_.simulate(options_.events_per_step);
  ++step_count_;
  return get_state();
}

RewardTerms RlEnv::reward_terms() const {
  std::vector<std::span<const JobRecord>> logs;
  logs.reserve(serviced_.size());
  for (EdgeType type : serviced_) logs.push_back(net_.queue_data(type, options_.reward_skip));
  return compute_reward(logs, net_.total_exits(), net_.total_arrivals());
}

double RlEnv::get_reward() const { return reward_terms().reward; }

StateVector RlEnv::reset(std::uint64_t seed) {
  net_ = QueueNetwork(config_, seed, options_.noise);
  step_count_ = 0;
  return get_state();
}

}  // namespace queuerl
