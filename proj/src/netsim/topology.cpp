#include "queuerl/netsim/topology.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

namespace {

std::string edge_name(const Edge& e) {
  return "edge type " + std::to_string(e.type) + " (" + std::to_string(e.source) + "->" +
         std::to_string(e.target) + ")";
}

// True when some exit edge is reachable from `start` using only serviced
// edges whose rate exceeds `min_rate`.
bool reaches_exit(const TopologyConfig& config, NodeId start, double min_rate) {
  std::vector<bool> seen(static_cast<std::size_t>(config.num_nodes), false);
  std::deque<NodeId> frontier{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!frontier.empty()) {
    NodeId node = frontier.front();
    frontier.pop_front();
    auto it = config.edge_list.find(node);
    if (it == config.edge_list.end()) continue;
    for (const auto& [target, type] : it->second) {
      if (config.is_exit(type)) return true;
      if (config.service_rates.at(type) <= min_rate) continue;
      if (!seen[static_cast<std::size_t>(target)]) {
        seen[static_cast<std::size_t>(target)] = true;
        frontier.push_back(target);
      }
    }
  }
  return false;
}

}  // namespace

std::vector<Edge> TopologyConfig::edges() const {
  std::vector<Edge> out;
  for (const auto& [source, targets] : edge_list) {
    for (const auto& [target, type] : targets) out.push_back({source, target, type});
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.type < b.type; });
  return out;
}

std::vector<EdgeType> TopologyConfig::serviced_edges() const {
  std::vector<EdgeType> out;
  for (const Edge& e : edges()) {
    if (!is_exit(e.type)) out.push_back(e.type);
  }
  return out;
}

std::vector<NodeId> TopologyConfig::blockable_nodes() const {
  std::set<NodeId> excluded;
  for (const Edge& e : edges()) {
    if (entry_edges.contains(e.type)) excluded.insert(e.source);
    if (exit_edges.contains(e.type)) excluded.insert(e.target);
  }
  std::vector<NodeId> out;
  for (NodeId n = 0; n < num_nodes; ++n) {
    if (!excluded.contains(n)) out.push_back(n);
  }
  return out;
}

void TopologyConfig::validate() const {
  if (num_nodes <= 0) throw ConfigError("num_nodes must be positive");
  if (!(arrival_rate > 0.0)) throw ConfigError("arrival_rate must be > 0");

  std::set<EdgeType> seen_types;
  const auto all = edges();
  for (const Edge& e : all) {
    if (!has_node(e.source) || !has_node(e.target)) {
      throw ConfigError(edge_name(e) + " references a node outside [0, num_nodes)");
    }
    if (!seen_types.insert(e.type).second) {
      throw ConfigError("duplicate edge type " + std::to_string(e.type));
    }
  }
  if (entry_edges.empty()) throw ConfigError("no entry edge declared");
  if (exit_edges.empty()) throw ConfigError("no exit edge declared");
  for (EdgeType t : entry_edges) {
    if (!seen_types.contains(t)) throw ConfigError("entry edge " + std::to_string(t) + " is not in the edge list");
    if (exit_edges.contains(t)) throw ConfigError("edge " + std::to_string(t) + " is both entry and exit");
  }
  for (EdgeType t : exit_edges) {
    if (!seen_types.contains(t)) throw ConfigError("exit edge " + std::to_string(t) + " is not in the edge list");
  }
  for (const auto& [type, rate] : service_rates) {
    if (!seen_types.contains(type)) {
      throw ConfigError("service rate given for unknown edge type " + std::to_string(type));
    }
    if (!(rate > 0.0)) throw ConfigError("service rate of edge type " + std::to_string(type) + " must be > 0");
  }
  for (const Edge& e : all) {
    if (is_exit(e.type)) continue;
    if (!service_rates.contains(e.type)) {
      throw ConfigError(edge_name(e) + " is not an exit edge and has no service rate");
    }
    auto out = edge_list.find(e.target);
    if (out == edge_list.end() || out->second.empty()) {
      throw ConfigError(edge_name(e) + " leads to node " + std::to_string(e.target) + " which has no outgoing edge");
    }
  }

  for (const Edge& e : all) {
    if (!entry_edges.contains(e.type)) continue;
    if (!reaches_exit(*this, e.target, 0.0)) {
      throw ConfigError("no path from " + edge_name(e) + " to an exit edge");
    }
    // Stability: the entry server must keep up, and some route onward must be
    // able to carry the full arrival stream.
    if (service_rates.at(e.type) <= arrival_rate) {
      throw ConfigError("arrival_rate must be below the service rate of entry " + edge_name(e));
    }
    if (!reaches_exit(*this, e.target, arrival_rate)) {
      throw ConfigError("every route from " + edge_name(e) + " has a server slower than arrival_rate");
    }
  }
}

TransitionMap uniform_transition_map(const TopologyConfig& config) {
  TransitionMap map;
  for (const auto& [source, targets] : config.edge_list) {
    if (targets.empty()) continue;
    const double p = 1.0 / static_cast<double>(targets.size());
    for (const auto& [target, type] : targets) map[source][target] = p;
  }
  return map;
}

}  // namespace queuerl
