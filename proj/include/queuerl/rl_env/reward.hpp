#pragma once

#include <cstdint>
#include <span>

#include "queuerl/netsim/queue_network.hpp"

namespace queuerl {

// Throughput ratio used in place of R when no job has exited yet.
inline constexpr double kThroughputFloor = 1e-3;

// Mean end-to-end delay of one edge's log. Jobs still on the edge are
// measured up to `clock`. An empty log yields 0.
double mean_end_to_end_delay(std::span<const JobRecord> records, double clock);

struct RewardTerms {
  double mean_delay = 0.0;        // mean over edges with at least one serviced job
  double throughput_ratio = 0.0;  // exits / arrivals
  double reward = 0.0;            // -mean_delay / max(ratio, floor) when ratio == 0
  std::size_t edges_included = 0;
};

// Reward from per-edge serviced-edge logs and network-wide exit/arrival
// counts. Only records with `serviced == true` contribute delays. Throws
// NoArrivals when `arrivals == 0`.
RewardTerms compute_reward(std::span<const std::span<const JobRecord>> edge_logs, std::int64_t exits,
                           std::int64_t arrivals);

}  // namespace queuerl
