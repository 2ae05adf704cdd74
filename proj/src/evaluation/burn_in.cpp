#include "queuerl/evaluation/burn_in.hpp"

#include <cmath>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

std::vector<double> trailing_moving_average(std::span<const double> values, std::size_t window) {
  std::vector<double> out;
  if (window == 0 || values.size() < window) return out;
  out.reserve(values.size() - window + 1);
  for (std::size_t k = 0; k + window <= values.size(); ++k) {
    double sum = 0.0;
    for (std::size_t j = k; j < k + window; ++j) sum += values[j];
    out.push_back(sum / static_cast<double>(window));
  }
  return out;
}

BurnInReport detect_burn_in(std::span<const double> rewards, std::size_t window_size, double threshold,
                            std::size_t consecutive_points) {
  if (window_size == 0 || consecutive_points == 0) {
    throw InsufficientData("window_size and consecutive_points must be positive");
  }
  if (rewards.size() < window_size + consecutive_points) {
    throw InsufficientData("burn-in detection needs at least " + std::to_string(window_size + consecutive_points) +
                           " rewards, got " + std::to_string(rewards.size()));
  }
  BurnInReport report;
  report.window_size = window_size;
  report.threshold = threshold;
  report.consecutive_points = consecutive_points;
  report.smoothed_curve = trailing_moving_average(rewards, window_size);
  for (std::size_t k = 0; k + 1 < report.smoothed_curve.size(); ++k) {
    report.derivative_curve.push_back(report.smoothed_curve[k + 1] - report.smoothed_curve[k]);
  }

  std::size_t run = 0;
  for (std::size_t k = 0; k < report.derivative_curve.size(); ++k) {
    run = std::abs(report.derivative_curve[k]) < threshold ? run + 1 : 0;
    if (run == consecutive_points) {
      report.stabilization_index = (k + 1 - consecutive_points) + window_size - 1;
      break;
    }
  }
  return report;
}

}  // namespace queuerl
