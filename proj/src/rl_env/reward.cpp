#include "queuerl/rl_env/reward.hpp"

#include "queuerl/errors.hpp"

namespace queuerl {

double mean_end_to_end_delay(std::span<const JobRecord> records, double clock) {
  if (records.empty()) return 0.0;
  double total = 0.0;
  for (const JobRecord& r : records) {
    const double end = r.exited() ? r.exit_time : clock;
    total += end - r.arrival_time;
  }
  return total / static_cast<double>(records.size());
}

RewardTerms compute_reward(std::span<const std::span<const JobRecord>> edge_logs, std::int64_t exits,
                           std::int64_t arrivals) {
  if (arrivals <= 0) throw NoArrivals("reward is undefined before the first external arrival");
  RewardTerms terms;
  double delay_sum = 0.0;
  for (const auto& log : edge_logs) {
    double edge_total = 0.0;
    std::int64_t serviced = 0;
    for (const JobRecord& r : log) {
      if (!r.serviced) continue;
      edge_total += r.exit_time - r.arrival_time;
      ++serviced;
    }
    if (serviced == 0) continue;
    delay_sum += edge_total / static_cast<double>(serviced);
    ++terms.edges_included;
  }
  if (terms.edges_included > 0) terms.mean_delay = delay_sum / static_cast<double>(terms.edges_included);
  terms.throughput_ratio = static_cast<double>(exits) / static_cast<double>(arrivals);
  const double ratio = terms.throughput_ratio > 0.0 ? terms.throughput_ratio : kThroughputFloor;
  terms.reward = terms.mean_delay > 0.0 ? -terms.mean_delay / ratio : 0.0;
  return terms;
}

}  // namespace queuerl
