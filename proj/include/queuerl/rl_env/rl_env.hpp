#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "queuerl/netsim/queue_network.hpp"
#include "queuerl/rl_env/reward.hpp"

namespace queuerl {

// Mean end-to-end delay per serviced edge, ascending by edge type.
struct StateVector {
  std::vector<double> delays;
  friend bool operator==(const StateVector&, const StateVector&) = default;
};

// Routing weight in [0, 1] per serviced edge, ascending by edge type.
struct ActionVector {
  std::vector<double> weights;
  friend bool operator==(const ActionVector&, const ActionVector&) = default;
};

// How an episode begins: with every node working, or with one node blocked.
struct StartMode {
  std::optional<NodeId> blocked_node;

  static StartMode normal() { return {}; }
  static StartMode blocked(NodeId node) { return {node}; }
  bool is_blocked() const { return blocked_node.has_value(); }
  friend bool operator==(const StartMode&, const StartMode&) = default;
};

struct EnvOptions {
  std::int64_t events_per_step = 100;
  std::size_t reward_skip = 0;  // records skipped per edge when computing the reward
  std::optional<NoiseConfig> noise;
};

// Weight given to an exit edge when a node routes to both serviced and exit
// edges; exit edges have no entry in the action vector.
inline constexpr double kExitEdgeWeight = 0.5;
// Below this extracted weight mass a node falls back to uniform routing.
inline constexpr double kMinWeightMass = 1e-6;

// Reinforcement-learning view of a QueueNetwork.
class RlEnv {
 public:
  RlEnv(TopologyConfig config, EnvOptions options, std::uint64_t seed);

  StateVector get_state() const;
  // Masks the action by each node's outgoing edge types, then normalizes.
  TransitionMap action_to_transition_probas(const ActionVector& action) const;
  // Installs the routing implied by `action`, simulates one step, and returns
  // the new state.
  StateVector get_next_state(const ActionVector& action);
  double get_reward() const;
  RewardTerms reward_terms() const;
  StateVector reset(std::uint64_t seed);

  std::size_t state_dim() const { return serviced_.size(); }
  std::size_t action_dim() const { return serviced_.size(); }
  const std::vector<EdgeType>& serviced_edges() const { return serviced_; }
  std::int64_t step_count() const { return step_count_; }
  const EnvOptions& options() const { return options_; }
  const TopologyConfig& config() const { return config_; }
  QueueNetwork& network() { return net_; }
  const QueueNetwork& network() const { return net_; }

 private:
  TopologyConfig config_;
  EnvOptions options_;
  std::vector<EdgeType> serviced_;
  std::map<EdgeType, std::size_t> action_index_;
  QueueNetwork net_;
  std::int64_t step_count_ = 0;
};

}  // namespace queuerl
