#pragma once

#include "queuerl/agent/mlp.hpp"

namespace queuerl {

// Adam with bias correction, one instance per network.
class Adam {
 public:
  Adam() = default;
  Adam(const Mlp& net, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  void step(Mlp& net, const MlpGradients& grads);

  double learning_rate() const { return lr_; }
  long steps() const { return t_; }

 private:
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long t_ = 0;
  MlpGradients m_;
  MlpGradients v_;
};

}  // namespace queuerl
