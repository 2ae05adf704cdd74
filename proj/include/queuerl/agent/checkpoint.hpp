#pragma once

#include <filesystem>
#include <optional>

#include "queuerl/agent/ddpg_agent.hpp"

namespace queuerl {

inline constexpr int kCheckpointVersion = 1;

// Writes the agent's hyperparameters and all six networks as text: a header
// per network with its layer sizes, then row-major weights and biases.
void save_checkpoint(const DdpgAgent& agent, const std::filesystem::path& path);

// Restores an agent. When expected dimensions are given, a checkpoint for a
// different state/action size is rejected with CheckpointError.
DdpgAgent load_checkpoint(const std::filesystem::path& path, std::optional<std::size_t> state_dim = std::nullopt,
                          std::optional<std::size_t> action_dim = std::nullopt);

}  // namespace queuerl
