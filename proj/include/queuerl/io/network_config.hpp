#pragma once

#include <filesystem>
#include <string>

#include "queuerl/netsim/topology.hpp"

namespace queuerl {

// Network YAML schema:
//   num_nodes: 3
//   arrival_rate: 0.5
//   entry_edges: [1]
//   exit_edges: [0]
//   edges:
//     - {source: 0, target: 1, edge_type: 1}
//     - {source: 1, target: 2, edge_type: 0}
//   service_rates: {1: 1.0}
// Throws ParseError for malformed documents and ConfigError when the parsed
// topology is invalid.
TopologyConfig parse_network_config(const std::filesystem::path& path);
TopologyConfig parse_network_config_string(const std::string& text);

// Canonical form: keys in the order above, edges sorted by type.
std::string emit_network_config(const TopologyConfig& config);

}  // namespace queuerl
