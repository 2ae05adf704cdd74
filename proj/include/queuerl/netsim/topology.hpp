#pragma once

#include <map>
#include <set>
#include <vector>

namespace queuerl {

using NodeId = int;
using EdgeType = int;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  EdgeType type = 0;
};

// Declarative description of an open queueing network.
//
// Each directed edge carries a unique edge type. Serviced edges ("LossQueue"
// in the original tooling) own a FIFO queue with a single exponential server;
// exit edges ("NullQueue") absorb jobs. External Poisson arrivals enter on
// every entry edge.
struct TopologyConfig {
  int num_nodes = 0;
  std::map<NodeId, std::map<NodeId, EdgeType>> edge_list;
  std::set<EdgeType> entry_edges;
  std::set<EdgeType> exit_edges;
  double arrival_rate = 1.0;
  std::map<EdgeType, double> service_rates;

  // Throws ConfigError describing the first violated invariant.
  void validate() const;

  // All edges, ascending by edge type.
  std::vector<Edge> edges() const;
  // Edge types that own a server, ascending. This is the state/action order.
  std::vector<EdgeType> serviced_edges() const;
  // Nodes that can be blocked: every node that is neither the source of an
  // entry edge nor the target of an exit edge.
  std::vector<NodeId> blockable_nodes() const;

  bool is_exit(EdgeType type) const { return exit_edges.contains(type); }
  bool has_node(NodeId node) const { return node >= 0 && node < num_nodes; }

  friend bool operator==(const TopologyConfig&, const TopologyConfig&) = default;
};

// Per-node routing distribution: node -> (successor node -> probability).
using TransitionMap = std::map<NodeId, std::map<NodeId, double>>;

// Equal probability to every successor of every node with outgoing edges.
TransitionMap uniform_transition_map(const TopologyConfig& config);

}  // namespace queuerl
