#pragma once

#include <random>

namespace queuerl {

// Gaussian perturbation of external interarrival gaps.
struct NoiseConfig {
  double mean = 0.0;
  double variance = 1.0;
  double frequency = 0.5;  // probability that a given gap is perturbed

  void validate() const;
};

inline constexpr double kInterarrivalFloor = 1e-6;

// With probability cfg.frequency returns max(base + delta, 1e-6) where
// delta ~ Normal(cfg.mean, cfg.variance); otherwise returns base.
double noisy_interarrival(double base, const NoiseConfig& cfg, std::mt19937_64& rng);

}  // namespace queuerl
