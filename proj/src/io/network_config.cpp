#include "queuerl/io/network_config.hpp"

#include <map>
#include <set>

#include "queuerl/errors.hpp"
#include "queuerl/io/yaml_util.hpp"

namespace queuerl {

namespace {

using yaml_util::as;
using yaml_util::where;

constexpr const char* kWhat = "network config";

const YAML::Node require(const YAML::Node& root, const char* key) {
  const YAML::Node node = root[key];
  if (!node.IsDefined()) throw ParseError(std::string(kWhat) + ": missing required key '" + key + "'");
  return node;
}

std::set<EdgeType> type_list(const YAML::Node& node, const char* key) {
  if (!node.IsSequence()) throw ParseError(where(node, key) + ": expected a list of edge types");
  std::set<EdgeType> out;
  for (const YAML::Node& item : node) out.insert(as<int>(item, key, "an integer edge type"));
  return out;
}

}  // namespace

TopologyConfig parse_network_config_string(const std::string& text) {
  const YAML::Node root = yaml_util::load_mapping(text, kWhat);
  static const char* const known[] = {"num_nodes",  "edges",         "entry_edges",
                                      "exit_edges", "arrival_rate", "service_rates"};
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError(where(kv.first, key) + ": unknown key");
  }

  TopologyConfig config;
  config.num_nodes = as<int>(require(root, "num_nodes"), "num_nodes", "an integer");
  config.arrival_rate = as<double>(require(root, "arrival_rate"), "arrival_rate", "a number");
  config.entry_edges = type_list(require(root, "entry_edges"), "entry_edges");
  config.exit_edges = type_list(require(root, "exit_edges"), "exit_edges");

  const YAML::Node edges = require(root, "edges");
  if (!edges.IsSequence()) throw ParseError(where(edges, "edges") + ": expected a list");
  std::map<EdgeType, std::pair<NodeId, NodeId>> seen;
  for (const YAML::Node& e : edges) {
    if (!e.IsMap()) throw ParseError(where(e, "edges") + ": each edge must be {source, target, edge_type}");
    const NodeId source = as<int>(e["source"], "edges.source", "an integer node id");
    const NodeId target = as<int>(e["target"], "edges.target", "an integer node id");
    const EdgeType type = as<int>(e["edge_type"], "edges.edge_type", "an integer edge type");
    if (!seen.emplace(type, std::pair{source, target}).second) {
      throw ConfigError("duplicate edge_type " + std::to_string(type) + " (edges " + std::to_string(source) + "->" +
                        std::to_string(target) + " and " + std::to_string(seen[type].first) + "->" +
                        std::to_string(seen[type].second) + ")");
    }
    if (!config.edge_list[source].emplace(target, type).second) {
      throw ConfigError("duplicate edge " + std::to_string(source) + "->" + std::to_string(target));
    }
  }

  const YAML::Node rates = require(root, "service_rates");
  if (!rates.IsMap()) throw ParseError(where(rates, "service_rates") + ": expected a mapping edge_type -> rate");
  for (const auto& kv : rates) {
    const EdgeType type = as<int>(kv.first, "service_rates", "an integer edge type");
    config.service_rates[type] = as<double>(kv.second, "service_rates." + kv.first.Scalar(), "a number");
  }

  config.validate();
  return config;
}

TopologyConfig parse_network_config(const std::filesystem::path& path) {
  return parse_network_config_string(yaml_util::read_text(path, "network config"));
}

std::string emit_network_config(const TopologyConfig& config) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "num_nodes" << YAML::Value << config.num_nodes;
  out << YAML::Key << "arrival_rate" << YAML::Value << config.arrival_rate;
  out << YAML::Key << "entry_edges" << YAML::Value << YAML::Flow << std::vector<EdgeType>(config.entry_edges.begin(), config.entry_edges.end());
  out << YAML::Key << "exit_edges" << YAML::Value << YAML::Flow << std::vector<EdgeType>(config.exit_edges.begin(), config.exit_edges.end());
  out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
  for (const Edge& e : config.edges()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "source" << YAML::Value << e.source << YAML::Key << "target"
        << YAML::Value << e.target << YAML::Key << "edge_type" << YAML::Value << e.type << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "service_rates" << YAML::Value << YAML::BeginMap;
  for (const auto& [type, rate] : config.service_rates) out << YAML::Key << type << YAML::Value << rate;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace queuerl
