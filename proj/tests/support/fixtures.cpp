#include "fixtures.hpp"

#include <algorithm>
#include <vector>

namespace queuerl::testing {

TopologyConfig mm1_config(double lambda, double mu) {
  TopologyConfig c;
  c.num_nodes = 3;
  c.edge_list = {{0, {{1, 1}}}, {1, {{2, 0}}}};
  c.entry_edges = {1};
  c.exit_edges = {0};
  c.arrival_rate = lambda;
  c.service_rates = {{1, mu}};
  return c;
}

TopologyConfig eleven_node_config() {
  TopologyConfig c;
  c.num_nodes = 11;
  c.edge_list = {{0, {{1, 1}}},          {1, {{2, 2}, {3, 3}, {4, 4}}}, {2, {{5, 5}}}, {3, {{6, 6}, {7, 7}}},
                 {4, {{8, 8}}},          {5, {{9, 9}}},                 {6, {{9, 10}}}, {7, {{9, 11}}},
                 {8, {{9, 12}}},         {9, {{10, 0}}}};
  c.entry_edges = {1};
  c.exit_edges = {0};
  c.arrival_rate = 0.8;
  c.service_rates = {{1, 3}, {2, 1}, {3, 4}, {4, 1},  {5, 1},  {6, 4},
                     {7, 4}, {8, 1}, {9, 1}, {10, 4}, {11, 4}, {12, 1}};
  return c;
}

TopologyConfig three_way_config(double lambda) {
  TopologyConfig c;
  c.num_nodes = 7;
  c.edge_list = {{0, {{1, 1}}}, {1, {{2, 2}, {3, 3}, {4, 4}}}, {2, {{5, 5}}}, {3, {{5, 6}}}, {4, {{5, 7}}},
                 {5, {{6, 0}}}};
  c.entry_edges = {1};
  c.exit_edges = {0};
  c.arrival_rate = lambda;
  c.service_rates = {{1, 30.0}, {2, 1.0 / 0.25}, {3, 1.0 / 0.0015}, {4, 1.0 / 100.0}, {5, 60.0}, {6, 60.0}, {7, 60.0}};
  return c;
}

TopologyConfig feed_forward_config(int num_nodes, double lambda) {
  // Node 0 is the source, node num_nodes - 1 the sink, the rest form layers.
  const int interior = num_nodes - 2;
  std::vector<std::vector<NodeId>> layers;
  for (int n = 1; n <= interior;) {
    std::vector<NodeId> layer;
    for (int k = 0; k < 3 && n <= interior; ++k) layer.push_back(n++);
    layers.push_back(layer);
  }
  TopologyConfig c;
  c.num_nodes = num_nodes;
  c.arrival_rate = lambda;
  EdgeType next_type = 1;
  auto add = [&](NodeId s, NodeId t, double rate) {
    const EdgeType type = next_type++;
    c.edge_list[s][t] = type;
    c.service_rates[type] = rate;
    return type;
  };
  c.entry_edges = {add(0, layers.front().front(), 4.0 * lambda)};
  for (std::size_t k = 1; k < layers.front().size(); ++k) add(layers.front().front(), layers.front()[k], 2.0);
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    for (NodeId s : layers[l]) {
      for (NodeId t : layers[l + 1]) add(s, t, 1.0 + 0.5 * static_cast<double>((s + t) % 4));
    }
  }
  // Every node of the last layer drains into the sink.
  const NodeId sink = num_nodes - 1;
  const NodeId drain = layers.back().front();
  for (std::size_t k = 1; k < layers.back().size(); ++k) add(layers.back()[k], drain, 2.0);
  c.edge_list[drain][sink] = 0;
  c.exit_edges = {0};
  return c;
}

std::filesystem::path repo_path(const std::filesystem::path& relative) {
  return std::filesystem::path(QUEUERL_SOURCE_DIR) / relative;
}

}  // namespace queuerl::testing
