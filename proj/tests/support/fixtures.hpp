#pragma once

#include <cstdint>
#include <filesystem>

#include "queuerl/netsim/topology.hpp"

namespace queuerl::testing {

// 0 -(1)-> 1 -(0, exit)-> 2
TopologyConfig mm1_config(double lambda, double mu);

// Eleven-node network with the 1 -> {2, 3, 4} split; the node-3 branch is fastest.
TopologyConfig eleven_node_config();

// Node 1 splits to 2, 3, 4 with mean service times 0.25, 0.0015 and 100.
TopologyConfig three_way_config(double lambda = 3.0);

// Layered feed-forward network with `num_nodes` nodes: a source, a sink, and
// interior layers of width up to 3 where every node feeds every node of the
// next layer.
TopologyConfig feed_forward_config(int num_nodes, double lambda = 0.5);

std::filesystem::path repo_path(const std::filesystem::path& relative);

}  // namespace queuerl::testing
