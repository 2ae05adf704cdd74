#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "queuerl/agent/ddpg_agent.hpp"
#include "queuerl/netsim/noise.hpp"

namespace queuerl {

enum class NoiseMode { kRetrain, kEvaluateOnly };

struct NoiseComparison {
  // Cumulative throughput rate (exits per unit simulated time) after each step.
  std::vector<double> standard_throughput;
  std::vector<double> noisy_throughput;
  double standard_slope = 0.0;
  double noisy_slope = 0.0;
};

// Ordinary least-squares slope of values against their index.
double least_squares_slope(std::span<const double> values);

// Matched greedy rollouts of `steps` actions in a standard and a noisy
// environment built from the same seed. In kRetrain mode the agent is first
// trained inside the noisy environment.
NoiseComparison evaluate_noise(DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                               const NoiseConfig& noise, NoiseMode mode, int steps, std::uint64_t seed);

}  // namespace queuerl
