#pragma once

#include <cstddef>
#include <map>
#include <random>
#include <vector>

#include "queuerl/agent/training.hpp"

namespace queuerl {

// Normal start with probability w1 / (w1 + w2); otherwise one blockable node,
// chosen uniformly, is blocked for the episode. Throws NoBlockableNodes when a
// blocked start is possible (w2 > 0) but the topology has no interior node.
StartMode choose_start_mode(double w1, double w2, const TopologyConfig& topology, std::mt19937_64& rng);

// Telemetry of visited states: the highest-|reward| states seen so far, and a
// visit count per coarse state signature.
class StateTracker {
 public:
  struct KeyState {
    StateVector state;
    double reward = 0.0;
    double impact() const;
  };
  using Signature = std::vector<long long>;

  explicit StateTracker(std::size_t key_capacity = 32, std::size_t peripheral_capacity = 4096);

  void record_visit(const StateVector& state, double reward);

  // Delays rounded to one decimal place, stored as tenths.
  static Signature signature(const StateVector& state);

  // Sorted by impact, highest first.
  const std::vector<KeyState>& key_states() const { return key_states_; }
  const std::map<Signature, std::size_t>& peripheral_states() const { return visits_; }
  std::size_t visit_count(const StateVector& state) const;
  std::size_t key_capacity() const { return key_capacity_; }
  std::size_t peripheral_capacity() const { return peripheral_capacity_; }

 private:
  std::size_t key_capacity_;
  std::size_t peripheral_capacity_;
  std::vector<KeyState> key_states_;
  std::map<Signature, std::size_t> visits_;
};

struct ExplorationResult {
  TrainingTrace trace;  // every episode labelled with its start mode
  StateTracker tracker;
};

// Trains `agent` with start modes drawn from (params.w1, params.w2). Visits
// during blocked episodes are recorded in the tracker.
ExplorationResult train_with_blockage_exploration(DdpgAgent& agent, RlEnv& env);

}  // namespace queuerl
