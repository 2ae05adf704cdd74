#include "queuerl/io/csv.hpp"

#include <charconv>

#include "queuerl/errors.hpp"

namespace queuerl {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : path_(path), columns_(header.size()) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw FileError("cannot write '" + path.string() + "'");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw Error("csv row for '" + path_.string() + "' has " + std::to_string(cells.size()) + " cells, expected " +
                std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) throw FileError("write failed for '" + path_.string() + "'");
}

std::vector<std::string> proba_columns(const TransitionMap& map) {
  std::vector<std::string> cols;
  for (const auto& [node, row] : map) {
    for (const auto& [succ, p] : row) cols.push_back("p_" + std::to_string(node) + "_" + std::to_string(succ));
  }
  return cols;
}

std::vector<std::string> proba_cells(const TransitionMap& map) {
  std::vector<std::string> cells;
  for (const auto& [node, row] : map) {
    for (const auto& [succ, p] : row) cells.push_back(format_number(p));
  }
  return cells;
}

namespace {

void write_probas(const TrainingTrace& trace, const std::filesystem::path& path) {
  if (trace.episodes.empty() || trace.episodes.front().transition_probas.empty()) {
    CsvWriter(path, {"timestep"});
    return;
  }
  std::vector<std::string> header{"timestep"};
  const auto cols = proba_columns(trace.episodes.front().transition_probas.front());
  header.insert(header.end(), cols.begin(), cols.end());
  CsvWriter csv(path, header);
  long long t = 0;
  for (const EpisodeTrace& ep : trace.episodes) {
    for (const TransitionMap& m : ep.transition_probas) {
      std::vector<std::string> cells{std::to_string(t++)};
      const auto p = proba_cells(m);
      cells.insert(cells.end(), p.begin(), p.end());
      csv.row(cells);
    }
  }
}

template <typename Get>
void write_loss(const TrainingTrace& trace, const std::filesystem::path& path, const char* name, Get get) {
  CsvWriter csv(path, {"update_index", name});
  for (std::size_t i = 0; i < trace.losses.size(); ++i) csv.values(i, get(trace.losses[i]));
}

}  // namespace

void write_training_csvs(const TrainingTrace& trace, const std::filesystem::path& dir) {
  CsvWriter rewards(dir / "reward.csv", {"episode", "timestep", "reward"});
  CsvWriter averages(dir / "avg_reward.csv", {"episode", "avg_reward"});
  long long t = 0;
  for (std::size_t e = 0; e < trace.episodes.size(); ++e) {
    for (double r : trace.episodes[e].rewards) rewards.values(e, t++, r);
    averages.values(e, trace.episodes[e].average_reward());
  }
  CsvWriter losses(dir / "losses.csv", {"update_index", "actor_loss", "critic_loss", "next_state_loss", "reward_loss"});
  for (std::size_t i = 0; i < trace.losses.size(); ++i) {
    const LossRecord& l = trace.losses[i];
    losses.values(i, l.actor_loss, l.critic_loss, l.next_state_loss, l.reward_loss);
  }
  write_probas(trace, dir / "transition_proba.csv");
}

void write_plot_data(const TrainingTrace& trace, const std::filesystem::path& dir) {
  write_probas(trace, dir / "transition_proba.csv");
  CsvWriter rewards(dir / "reward.csv", {"timestep", "reward"});
  CsvWriter averages(dir / "average_reward_episode.csv", {"episode", "avg_reward"});
  long long t = 0;
  for (std::size_t e = 0; e < trace.episodes.size(); ++e) {
    for (double r : trace.episodes[e].rewards) rewards.values(t++, r);
    averages.values(e, trace.episodes[e].average_reward());
  }
  write_loss(trace, dir / "actor_loss.csv", "actor_loss", [](const LossRecord& l) { return l.actor_loss; });
  write_loss(trace, dir / "critic_loss.csv", "critic_loss", [](const LossRecord& l) { return l.critic_loss; });
  write_loss(trace, dir / "reward_model_loss.csv", "reward_model_loss",
             [](const LossRecord& l) { return l.reward_loss; });
  write_loss(trace, dir / "next_state_model_loss.csv", "next_state_model_loss",
             [](const LossRecord& l) { return l.next_state_loss; });
}

}  // namespace queuerl
