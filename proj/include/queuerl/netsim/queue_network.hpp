#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "queuerl/netsim/noise.hpp"
#include "queuerl/netsim/topology.hpp"

namespace queuerl {

// One traversal of one edge by one job.
struct JobRecord {
  std::int64_t job_id = 0;
  EdgeType edge_type = 0;
  double arrival_time = 0.0;
  std::optional<double> service_start_time;
  double exit_time = 0.0;  // 0 means the job is still on this edge
  bool serviced = false;   // set when the job completes service and leaves

  bool exited() const { return exit_time != 0.0; }
};

// Discrete-event simulator for an open queueing network with exponential
// servers, Poisson external arrivals and FIFO queues.
//
// Not thread-safe; a network may be moved between threads.
class QueueNetwork {
 public:
  QueueNetwork(TopologyConfig config, std::uint64_t seed,
               std::optional<NoiseConfig> noise = std::nullopt);

  // Processes exactly `num_events` arrival / service-completion events.
  void simulate(std::int64_t num_events);

  // Records of `edge_type` with the first `skip` omitted. Throws UnknownEdge.
  std::span<const JobRecord> queue_data(EdgeType edge_type, std::size_t skip = 0) const;

  // A blocked node never completes service on any serviced edge incident to
  // it. Both throw UnknownNode for nodes that are absent or not blockable.
  void set_blockage(NodeId node);
  void clear_blockage(NodeId node);
  const std::set<NodeId>& blocked_nodes() const { return blocked_; }

  void set_transition_map(const TransitionMap& map);
  const TransitionMap& transition_map() const { return transition_map_; }

  void set_interarrival_noise(std::optional<NoiseConfig> noise) { noise_ = noise; }

  const TopologyConfig& config() const { return config_; }
  double clock() const { return clock_; }
  std::int64_t events_processed() const { return events_processed_; }
  const std::map<EdgeType, std::int64_t>& arrivals_total() const { return arrivals_total_; }
  const std::map<EdgeType, std::int64_t>& exits_total() const { return exits_total_; }
  std::int64_t total_arrivals() const;
  std::int64_t total_exits() const;
  // Jobs currently waiting or in service anywhere in the network.
  std::int64_t jobs_in_system() const;
  std::size_t queue_length(EdgeType edge_type) const;

 private:
  enum class EventKind : std::uint8_t { kArrival, kCompletion };

  struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    std::size_t edge;        // index into edges_
    std::uint64_t token;     // service token for completions

    bool operator>(const Event& other) const {
      if (time != other.time) return time > other.time;
      return seq > other.seq;
    }
  };

  struct WaitingJob {
    std::int64_t job_id;
    std::size_t record;  // index into the edge's log
  };

  struct EdgeState {
    Edge edge;
    bool is_exit = false;
    double service_rate = 0.0;
    std::deque<WaitingJob> queue;
    std::vector<JobRecord> log;
    bool in_service = false;
    std::uint64_t service_token = 0;
  };

  // Cumulative routing table for one node.
  struct RouteTable {
    std::vector<double> cumulative;
    std::vector<std::size_t> edges;
  };

  std::size_t edge_index(EdgeType type) const;
  bool edge_blocked(const EdgeState& e) const;
  void schedule(double time, EventKind kind, std::size_t edge, std::uint64_t token = 0);
  void schedule_next_arrival(std::size_t edge);
  void try_start_service(std::size_t edge);
  void enqueue(std::size_t edge, std::int64_t job_id);
  void route_from(NodeId node, std::int64_t job_id);
  void rebuild_routes();
  void check_blockable(NodeId node) const;

  TopologyConfig config_;
  std::mt19937_64 rng_;
  std::mt19937_64 noise_rng_;  // keeps noise draws off the main stream
  double clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::int64_t next_job_id_ = 0;
  std::int64_t events_processed_ = 0;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> calendar_;
  std::vector<EdgeState> edges_;
  std::map<EdgeType, std::size_t> edge_lookup_;
  std::map<EdgeType, std::int64_t> arrivals_total_;
  std::map<EdgeType, std::int64_t> exits_total_;
  TransitionMap transition_map_;
  std::map<NodeId, RouteTable> routes_;
  std::set<NodeId> blocked_;
  std::set<NodeId> blockable_;
  std::optional<NoiseConfig> noise_;
};

// Validates `config` and returns a network at clock 0 with uniform routing
// and the first external arrival scheduled on every entry edge.
QueueNetwork build_network(const TopologyConfig& config, std::uint64_t seed,
                           std::optional<NoiseConfig> noise = std::nullopt);

}  // namespace queuerl
