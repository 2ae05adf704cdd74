#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "queuerl/evaluation/noise_evaluation.hpp"
#include "queuerl/netsim/topology.hpp"

namespace queuerl {

enum class Function { kTrain, kTune, kEvaluate };
enum class Evaluator { kBurnIn, kConvergence, kNoise, kDisruption, kRobustness };

Function function_from_string(const std::string& name);
Evaluator evaluator_from_string(const std::string& name);
NoiseMode noise_mode_from_string(const std::string& name);

struct RunConfig {
  Function function = Function::kTrain;
  std::filesystem::path config_file;
  std::filesystem::path param_file;
  std::filesystem::path data_file = "output_csv";
  std::filesystem::path image_file = "output_plots";
  bool plot_curves = false;
  bool save_file = false;
  std::string run_name;  // empty: a timestamp

  std::optional<Evaluator> evaluator;
  std::optional<std::filesystem::path> agent_file;  // pre-trained agent for noise/disruption
  std::optional<NodeId> node;
  std::size_t window_size = 5;
  double threshold = 0.05;
  std::size_t consecutive_points = 3;
  NoiseConfig noise;
  NoiseMode noise_mode = NoiseMode::kEvaluateOnly;
  int num_agents = 10;
  double z = 1.96;
  double margin = 1.0;
  int time_steps = 100;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitConfig = 3,
  kExitParse = 4,
  kExitFile = 5,
  kExitUnknownEdge = 6,
  kExitUnknownNode = 7,
  kExitDimensionMismatch = 8,
  kExitNoArrivals = 9,
  kExitEmptyBuffer = 10,
  kExitInsufficientBuffer = 11,
  kExitInsufficientData = 12,
  kExitNoBlockableNodes = 13,
  kExitCheckpoint = 14,
};

// Executes one command. Errors are reported on `err` as a single line and
// mapped to an ExitCode; progress goes to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace queuerl
