#include "queuerl/netsim/noise.hpp"

#include <algorithm>
#include <cmath>

#include "queuerl/errors.hpp"

namespace queuerl {

void NoiseConfig::validate() const {
  if (!(variance >= 0.0)) throw ConfigError("noise variance must be >= 0");
  if (!(frequency >= 0.0 && frequency <= 1.0)) throw ConfigError("noise frequency must lie in [0, 1]");
}

double noisy_interarrival(double base, const NoiseConfig& cfg, std::mt19937_64& rng) {
  if (cfg.frequency <= 0.0) return base;
  std::bernoulli_distribution perturb(cfg.frequency);
  if (!perturb(rng)) return base;
  double delta = cfg.mean;
  if (cfg.variance > 0.0) {
    std::normal_distribution<double> normal(cfg.mean, std::sqrt(cfg.variance));
    delta = normal(rng);
  }
  return std::max(base + delta, kInterarrivalFloor);
}

}  // namespace queuerl
