#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "queuerl/agent/params.hpp"
#include "queuerl/rl_env/rl_env.hpp"
#include "queuerl/tuning/search_space.hpp"

namespace queuerl {

struct HyperparamFile {
  AgentParams params;
  std::optional<SearchSpace> search_space;  // set when any field is a range or choice list
  std::int64_t events_per_step = EnvOptions{}.events_per_step;
  std::int64_t reward_skip = 0;

  EnvOptions env_options() const;
};

// Hyperparameter YAML: every AgentParams field by name, plus events_per_step,
// reward_skip, hidden_layers (list), state_transform (identity | log1p),
// reward_transform (identity | symlog) and
// trials. A numeric field may instead hold
//   {low: 1e-4, high: 1e-2, scale: log}   range (scale defaults to linear)
//   {choices: [16, 32, 64]} or [16, 32, 64]   choice list
// which makes it part of the search space. Missing fields keep defaults.
HyperparamFile parse_hyperparams(const std::filesystem::path& path);
HyperparamFile parse_hyperparams_string(const std::string& text);

}  // namespace queuerl
