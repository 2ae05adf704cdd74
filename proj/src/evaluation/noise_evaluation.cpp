#include "queuerl/evaluation/noise_evaluation.hpp"

#include "queuerl/agent/training.hpp"
#include "queuerl/errors.hpp"
#include "queuerl/evaluation/rollout.hpp"

namespace queuerl {

double least_squares_slope(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += static_cast<double>(i);
    mean_y += values[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (values[i] - mean_y);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

std::vector<double> throughput_series(const DdpgAgent& agent, RlEnv& env, int steps) {
  std::vector<double> out;
  for (const RolloutStep& s : rollout(agent, env, steps)) out.push_back(s.throughput_rate);
  return out;
}

}  // namespace

NoiseComparison evaluate_noise(DdpgAgent& agent, const TopologyConfig& config, const EnvOptions& options,
                               const NoiseConfig& noise, NoiseMode mode, int steps, std::uint64_t seed) {
  noise.validate();
  if (steps < 1) throw ConfigError("noise evaluation needs at least one step");
  EnvOptions standard = options;
  standard.noise.reset();
  EnvOptions noisy = options;
  noisy.noise = noise;

  if (mode == NoiseMode::kRetrain) {
    RlEnv train_env(config, noisy, agent.params().seed);
    train(agent, train_env);
  }

  NoiseComparison result;
  RlEnv standard_env(config, standard, seed);
  RlEnv noisy_env(config, noisy, seed);
  result.standard_throughput = throughput_series(agent, standard_env, steps);
  result.noisy_throughput = throughput_series(agent, noisy_env, steps);
  result.standard_slope = least_squares_slope(result.standard_throughput);
  result.noisy_slope = least_squares_slope(result.noisy_throughput);
  return result;
}

}  // namespace queuerl
