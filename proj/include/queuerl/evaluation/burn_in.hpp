#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace queuerl {

struct BurnInReport {
  // Timestep at which the reward is judged stable, if it ever is.
  std::optional<std::size_t> stabilization_index;
  // smoothed_curve[k] is the trailing mean ending at timestep k + window_size - 1.
  std::vector<double> smoothed_curve;
  // derivative_curve[k] = smoothed_curve[k + 1] - smoothed_curve[k].
  std::vector<double> derivative_curve;
  std::size_t window_size = 0;
  double threshold = 0.0;
  std::size_t consecutive_points = 0;
};

// Smooths the rewards with a trailing moving average, differentiates, and
// reports the first timestep from which `consecutive_points` successive
// |derivatives| stay below `threshold`. Throws InsufficientData when fewer
// than window_size + consecutive_points rewards are given.
BurnInReport detect_burn_in(std::span<const double> rewards, std::size_t window_size, double threshold,
                            std::size_t consecutive_points);

// Trailing moving average; element k averages values[k .. k + window - 1].
std::vector<double> trailing_moving_average(std::span<const double> values, std::size_t window);

}  // namespace queuerl
