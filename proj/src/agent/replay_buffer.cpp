#include "queuerl/agent/replay_buffer.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "queuerl/errors.hpp"

namespace queuerl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("replay buffer capacity must be positive");
}

void ReplayBuffer::push(Experience experience) {
  if (storage_.size() == capacity_) storage_.pop_front();
  storage_.push_back(std::move(experience));
}

std::vector<Experience> ReplayBuffer::sample(std::size_t batch_size, std::mt19937_64& rng) const {
  if (batch_size == 0 || storage_.size() < batch_size) {
    throw InsufficientBuffer("cannot sample " + std::to_string(batch_size) + " experiences from a buffer of " +
                             std::to_string(storage_.size()));
  }
  // Floyd's algorithm: batch_size distinct indices, then shuffled.
  const std::size_t n = storage_.size();
  std::unordered_set<std::size_t> chosen;
  std::vector<std::size_t> indices;
  indices.reserve(batch_size);
  for (std::size_t j = n - batch_size; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t t = pick(rng);
    const std::size_t idx = chosen.insert(t).second ? t : j;
    if (idx == j) chosen.insert(j);
    indices.push_back(idx);
  }
  std::shuffle(indices.begin(), indices.end(), rng);
  std::vector<Experience> batch;
  batch.reserve(batch_size);
  for (std::size_t i : indices) batch.push_back(storage_[i]);
  return batch;
}

}  // namespace queuerl
