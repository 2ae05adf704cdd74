#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "queuerl/agent/training.hpp"

namespace queuerl {

// Shortest text that round-trips the double.
std::string format_number(double value);

class CsvWriter {
 public:
  // Creates parent directories. Throws FileError if the file cannot be opened.
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  // Throws Error if the cell count differs from the header.
  void row(const std::vector<std::string>& cells);

  // Integers are written as-is, doubles via format_number.
  template <typename... Ts>
  void values(const Ts&... v) {
    row({cell(v)...});
  }

  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(long long v) { return std::to_string(v); }
  static std::string cell(unsigned long v) { return std::to_string(v); }
  static std::string cell(unsigned long long v) { return std::to_string(v); }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

// Column names "p_<node>_<successor>" for every edge of the map, in map order.
std::vector<std::string> proba_columns(const TransitionMap& map);
std::vector<std::string> proba_cells(const TransitionMap& map);

// reward.csv, avg_reward.csv, losses.csv and transition_proba.csv.
void write_training_csvs(const TrainingTrace& trace, const std::filesystem::path& dir);

// One file per training figure: transition_proba, reward,
// average_reward_episode, actor_loss, critic_loss, reward_model_loss and
// next_state_model_loss.
void write_plot_data(const TrainingTrace& trace, const std::filesystem::path& dir);

}  // namespace queuerl
