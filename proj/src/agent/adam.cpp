#include "queuerl/agent/adam.hpp"

#include <cmath>

namespace queuerl {

Adam::Adam(const Mlp& net, double learning_rate, double beta1, double beta2, double eps)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (std::size_t k = 0; k < net.num_layers(); ++k) {
    m_.weights.push_back(Eigen::MatrixXd::Zero(net.weights()[k].rows(), net.weights()[k].cols()));
    m_.biases.push_back(Eigen::VectorXd::Zero(net.biases()[k].size()));
  }
  v_ = m_;
}

void Adam::step(Mlp& net, const MlpGradients& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  const double step = lr_ * std::sqrt(c2) / c1;
  auto apply = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    param.array() -= step * m.array() / (v.array().sqrt() + eps_);
  };
  for (std::size_t k = 0; k < net.num_layers(); ++k) {
    apply(net.weights()[k], m_.weights[k], v_.weights[k], grads.weights[k]);
    apply(net.biases()[k], m_.biases[k], v_.biases[k], grads.biases[k]);
  }
}

}  // namespace queuerl
