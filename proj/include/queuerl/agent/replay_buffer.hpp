#pragma once

#include <cstddef>
#include <deque>
#include <random>
#include <vector>

#include "queuerl/rl_env/rl_env.hpp"

namespace queuerl {

struct Experience {
  StateVector state;
  ActionVector action;
  double reward = 0.0;
  StateVector next_state;
};

// Bounded FIFO of experiences; the oldest entry is evicted once full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Experience experience);
  // `batch_size` distinct experiences drawn uniformly. Throws
  // InsufficientBuffer when fewer than `batch_size` are stored.
  std::vector<Experience> sample(std::size_t batch_size, std::mt19937_64& rng) const;

  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return storage_.empty(); }
  const Experience& operator[](std::size_t i) const { return storage_[i]; }
  const std::deque<Experience>& contents() const { return storage_; }

 private:
  std::size_t capacity_;
  std::deque<Experience> storage_;
};

}  // namespace queuerl
