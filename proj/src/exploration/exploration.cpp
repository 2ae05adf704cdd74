#include "queuerl/exploration/exploration.hpp"

#include <algorithm>
#include <cmath>

#include "queuerl/errors.hpp"

namespace queuerl {

StartMode choose_start_mode(double w1, double w2, const TopologyConfig& topology, std::mt19937_64& rng) {
  if (!(w1 >= 0.0 && w2 >= 0.0 && w1 + w2 > 0.0)) throw ConfigError("start-mode weights need w1, w2 >= 0 and w1 + w2 > 0");
  const auto nodes = topology.blockable_nodes();
  if (w2 > 0.0 && nodes.empty()) throw NoBlockableNodes("topology has no node that can be blocked");
  if (w2 == 0.0) return StartMode::normal();
  if (w1 > 0.0) {
    std::bernoulli_distribution normal(w1 / (w1 + w2));
    if (normal(rng)) return StartMode::normal();
  }
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  return StartMode::blocked(nodes[pick(rng)]);
}

double StateTracker::KeyState::impact() const { return std::abs(reward); }

StateTracker::StateTracker(std::size_t key_capacity, std::size_t peripheral_capacity)
    : key_capacity_(key_capacity), peripheral_capacity_(peripheral_capacity) {}

StateTracker::Signature StateTracker::signature(const StateVector& state) {
  Signature sig;
  sig.reserve(state.delays.size());
  for (double d : state.delays) sig.push_back(std::llround(d * 10.0));
  return sig;
}

std::size_t StateTracker::visit_count(const StateVector& state) const {
  auto it = visits_.find(signature(state));
  return it == visits_.end() ? 0 : it->second;
}

void StateTracker::record_visit(const StateVector& state, double reward) {
  Signature sig = signature(state);
  auto it = visits_.find(sig);
  if (it != visits_.end()) {
    ++it->second;
  } else if (visits_.size() < peripheral_capacity_) {
    visits_.emplace(std::move(sig), 1);
  }

  if (key_capacity_ == 0) return;
  KeyState entry{state, reward};
  const auto by_impact = [](const KeyState& a, const KeyState& b) { return a.impact() > b.impact(); };
  if (key_states_.size() < key_capacity_) {
    key_states_.insert(std::upper_bound(key_states_.begin(), key_states_.end(), entry, by_impact), std::move(entry));
    return;
  }
  if (entry.impact() <= key_states_.back().impact()) return;
  key_states_.pop_back();
  key_states_.insert(std::upper_bound(key_states_.begin(), key_states_.end(), entry, by_impact), std::move(entry));
}

ExplorationResult train_with_blockage_exploration(DdpgAgent& agent, RlEnv& env) {
  ExplorationResult result;
  const AgentParams& p = agent.params();
  const TopologyConfig topology = env.config();
  StartModeChooser chooser = [&](int, std::mt19937_64& rng) { return choose_start_mode(p.w1, p.w2, topology, rng); };
  StepObserver observer = [&](int, const StartMode& mode, const StateVector& state, double reward) {
    if (mode.is_blocked()) result.tracker.record_visit(state, reward);
  };
  result.trace = train(agent, env, chooser, observer);
  return result;
}

}  // namespace queuerl
