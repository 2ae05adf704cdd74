#include "queuerl/netsim/queue_network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

QueueNetwork::QueueNetwork(TopologyConfig config, std::uint64_t seed, std::optional<NoiseConfig> noise)
    : config_(std::move(config)), rng_(seed), noise_rng_(seed ^ 0xA5A5A5A5DEADBEEFULL), noise_(noise) {
  config_.validate();
  if (noise_) noise_->validate();

  for (const Edge& e : config_.edges()) {
    EdgeState state;
    state.edge = e;
    state.is_exit = config_.is_exit(e.type);
    if (!state.is_exit) state.service_rate = config_.service_rates.at(e.type);
    edge_lookup_[e.type] = edges_.size();
    edges_.push_back(std::move(state));
  }
  for (EdgeType t : config_.entry_edges) arrivals_total_[t] = 0;
  for (EdgeType t : config_.exit_edges) exits_total_[t] = 0;
  const auto blockable = config_.blockable_nodes();
  blockable_.insert(blockable.begin(), blockable.end());

  transition_map_ = uniform_transition_map(config_);
  rebuild_routes();
  for (EdgeType t : config_.entry_edges) schedule_next_arrival(edge_index(t));
}

QueueNetwork build_network(const TopologyConfig& config, std::uint64_t seed, std::optional<NoiseConfig> noise) {
  return QueueNetwork(config, seed, noise);
}

std::size_t QueueNetwork::edge_index(EdgeType type) const {
  auto it = edge_lookup_.find(type);
  if (it == edge_lookup_.end()) throw UnknownEdge("unknown edge type " + std::to_string(type));
  return it->second;
}

bool QueueNetwork::edge_blocked(const EdgeState& e) const {
  if (e.is_exit || blocked_.empty()) return false;
  return blocked_.contains(e.edge.source) || blocked_.contains(e.edge.target);
}

void QueueNetwork::schedule(double time, EventKind kind, std::size_t edge, std::uint64_t token) {
  calendar_.push(Event{time, next_seq_++, kind, edge, token});
}

void QueueNetwork::schedule_next_arrival(std::size_t edge) {
  std::exponential_distribution<double> gap(config_.arrival_rate);
  double dt = gap(rng_);
  if (noise_) dt = noisy_interarrival(dt, *noise_, noise_rng_);
  schedule(clock_ + dt, EventKind::kArrival, edge);
}

void QueueNetwork::try_start_service(std::size_t index) {
  EdgeState& e = edges_[index];
  if (e.in_service || e.queue.empty() || edge_blocked(e)) return;
  e.in_service = true;
  e.log[e.queue.front().record].service_start_time = clock_;
  std::exponential_distribution<double> duration(e.service_rate);
  schedule(clock_ + duration(rng_), EventKind::kCompletion, index, e.service_token);
}

void QueueNetwork::enqueue(std::size_t index, std::int64_t job_id) {
  EdgeState& e = edges_[index];
  JobRecord record;
  record.job_id = job_id;
  record.edge_type = e.edge.type;
  record.arrival_time = clock_;
  if (e.is_exit) {
    record.service_start_time = clock_;
    record.exit_time = clock_;
    record.serviced = true;
    e.log.push_back(record);
    ++exits_total_[e.edge.type];
    return;
  }
  e.log.push_back(record);
  e.queue.push_back({job_id, e.log.size() - 1});
  try_start_service(index);
}

void QueueNetwork::route_from(NodeId node, std::int64_t job_id) {
  const RouteTable& table = routes_.at(node);
  std::size_t choice = 0;
  if (table.edges.size() > 1) {
    std::uniform_real_distribution<double> u(0.0, table.cumulative.back());
    const double x = u(rng_);
    auto it = std::upper_bound(table.cumulative.begin(), table.cumulative.end(), x);
    choice = std::min<std::size_t>(static_cast<std::size_t>(it - table.cumulative.begin()), table.edges.size() - 1);
  }
  enqueue(table.edges[choice], job_id);
}

void QueueNetwork::simulate(std::int64_t num_events) {
  std::int64_t done = 0;
  while (done < num_events && !calendar_.empty()) {
    const Event ev = calendar_.top();
    calendar_.pop();
    EdgeState& e = edges_[ev.edge];
    if (ev.kind == EventKind::kCompletion && (ev.token != e.service_token || edge_blocked(e))) {
      continue;  // cancelled by a blockage
    }
    clock_ = ev.time;
    ++done;
    ++events_processed_;
    if (ev.kind == EventKind::kArrival) {
      const std::int64_t job = next_job_id_++;
      ++arrivals_total_[e.edge.type];
      enqueue(ev.edge, job);
      schedule_next_arrival(ev.edge);
      continue;
    }
    const WaitingJob head = e.queue.front();
    e.queue.pop_front();
    e.in_service = false;
    JobRecord& record = e.log[head.record];
    record.exit_time = clock_;
    record.serviced = true;
    const NodeId next_node = e.edge.target;
    try_start_service(ev.edge);
    route_from(next_node, head.job_id);
  }
}

std::span<const JobRecord> QueueNetwork::queue_data(EdgeType edge_type, std::size_t skip) const {
  const auto& log = edges_[edge_index(edge_type)].log;
  if (skip >= log.size()) return {};
  return std::span<const JobRecord>(log).subspan(skip);
}

void QueueNetwork::check_blockable(NodeId node) const {
  if (!config_.has_node(node)) throw UnknownNode("unknown node " + std::to_string(node));
  if (!blockable_.contains(node)) {
    throw UnknownNode("node " + std::to_string(node) + " is an entry source or exit sink and cannot be blocked");
  }
}

void QueueNetwork::set_blockage(NodeId node) {
  check_blockable(node);
  if (!blocked_.insert(node).second) return;
  for (EdgeState& e : edges_) {
    if (e.is_exit || (e.edge.source != node && e.edge.target != node)) continue;
    // Invalidate the pending completion; the head job stays in place.
    ++e.service_token;
    e.in_service = false;
  }
}

void QueueNetwork::clear_blockage(NodeId node) {
  check_blockable(node);
  if (blocked_.erase(node) == 0) return;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& edge = edges_[i].edge;
    if (edge.source == node || edge.target == node) try_start_service(i);
  }
}

void QueueNetwork::set_transition_map(const TransitionMap& map) {
  for (const auto& [source, targets] : config_.edge_list) {
    if (targets.empty()) continue;
    auto row = map.find(source);
    if (row == map.end() || row->second.size() != targets.size()) {
      throw ConfigError("transition map row for node " + std::to_string(source) + " does not match the edge list");
    }
    double sum = 0.0;
    for (const auto& [target, p] : row->second) {
      if (!targets.contains(target)) {
        throw ConfigError("transition map routes node " + std::to_string(source) + " to non-successor " +
                          std::to_string(target));
      }
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("transition probability outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError("transition probabilities of node " + std::to_string(source) + " do not sum to 1");
    }
  }
  if (map.size() != transition_map_.size()) throw ConfigError("transition map has rows for unknown nodes");
  transition_map_ = map;
  rebuild_routes();
}

void QueueNetwork::rebuild_routes() {
  routes_.clear();
  for (const auto& [source, targets] : config_.edge_list) {
    if (targets.empty()) continue;
    RouteTable table;
    double acc = 0.0;
    const auto& row = transition_map_.at(source);
    for (const auto& [target, type] : targets) {
      acc += row.at(target);
      table.cumulative.push_back(acc);
      table.edges.push_back(edge_index(type));
    }
    // A row of all zeros cannot occur after validation, but guard the sampler.
    if (!(acc > 0.0)) {
      for (std::size_t k = 0; k < table.cumulative.size(); ++k) table.cumulative[k] = static_cast<double>(k + 1);
    }
    routes_[source] = std::move(table);
  }
}

std::int64_t QueueNetwork::total_arrivals() const {
  std::int64_t n = 0;
  for (const auto& [t, count] : arrivals_total_) n += count;
  return n;
}

std::int64_t QueueNetwork::total_exits() const {
  std::int64_t n = 0;
  for (const auto& [t, count] : exits_total_) n += count;
  return n;
}

std::int64_t QueueNetwork::jobs_in_system() const {
  std::int64_t n = 0;
  for (const EdgeState& e : edges_) n += static_cast<std::int64_t>(e.queue.size());
  return n;
}

std::size_t QueueNetwork::queue_length(EdgeType edge_type) const { return edges_[edge_index(edge_type)].queue.size(); }

}  // namespace queuerl
