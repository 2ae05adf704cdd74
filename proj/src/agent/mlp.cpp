#include "queuerl/agent/mlp.hpp"

#include <cmath>

#include "queuerl/errors.hpp"

namespace queuerl {

namespace {

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw ConfigError("an MLP needs at least an input and an output layer");
  for (int s : sizes) {
    if (s <= 0) throw ConfigError("MLP layer sizes must be positive");
  }
}

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& x) {
  return x.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, OutputActivation output, std::mt19937_64& rng)
    : layer_sizes_(std::move(layer_sizes)), output_(output) {
  check_sizes(layer_sizes_);
  for (std::size_t k = 0; k + 1 < layer_sizes_.size(); ++k) {
    const int fan_in = layer_sizes_[k];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> init(-bound, bound);
    Eigen::MatrixXd w(layer_sizes_[k + 1], fan_in);
    // Fill row-major so the draw order matches the flat parameter layout.
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = init(rng);
    }
    Eigen::VectorXd b(layer_sizes_[k + 1]);
    for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = init(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(std::move(b));
  }
}

Mlp Mlp::zeros(std::vector<int> layer_sizes, OutputActivation output) {
  check_sizes(layer_sizes);
  Mlp net;
  net.layer_sizes_ = std::move(layer_sizes);
  net.output_ = output;
  for (std::size_t k = 0; k + 1 < net.layer_sizes_.size(); ++k) {
    net.weights_.push_back(Eigen::MatrixXd::Zero(net.layer_sizes_[k + 1], net.layer_sizes_[k]));
    net.biases_.push_back(Eigen::VectorXd::Zero(net.layer_sizes_[k + 1]));
  }
  return net;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input) const {
  Tape tape;
  return forward(input, tape);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& input, Tape& tape) const {
  if (input.rows() != input_dim()) {
    throw DimensionMismatch("network expects " + std::to_string(input_dim()) + " inputs, got " +
                            std::to_string(input.rows()));
  }
  tape.activations.clear();
  tape.activations.reserve(weights_.size() + 1);
  tape.activations.push_back(input);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    Eigen::MatrixXd z = weights_[k] * tape.activations.back();
    z.colwise() += biases_[k];
    const bool last = k + 1 == weights_.size();
    if (!last) {
      z = z.cwiseMax(0.0);
    } else if (output_ == OutputActivation::kSigmoid) {
      z = sigmoid(z);
    }
    tape.activations.push_back(std::move(z));
  }
  return tape.activations.back();
}

MlpGradients Mlp::backward(const Tape& tape, const Eigen::MatrixXd& grad_output, Eigen::MatrixXd* grad_input) const {
  if (output_ != OutputActivation::kSigmoid) return backward_from_logits(tape, grad_output, grad_input);
  const Eigen::MatrixXd& y = tape.activations[weights_.size()];
  return backward_from_logits(tape, grad_output.cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix())), grad_input);
}

Eigen::MatrixXd Mlp::output_logits(const Tape& tape) const {
  const std::size_t n = weights_.size();
  return (weights_[n - 1] * tape.activations[n - 1]).colwise() + biases_[n - 1];
}

MlpGradients Mlp::backward_from_logits(const Tape& tape, const Eigen::MatrixXd& grad_logits,
                                       Eigen::MatrixXd* grad_input) const {
  const std::size_t n = weights_.size();
  MlpGradients grads;
  grads.weights.resize(n);
  grads.biases.resize(n);

  Eigen::MatrixXd delta = grad_logits;
  for (std::size_t k = n; k-- > 0;) {
    const Eigen::MatrixXd& in = tape.activations[k];
    grads.weights[k] = delta * in.transpose();
    grads.biases[k] = delta.rowwise().sum();
    if (k == 0 && grad_input == nullptr) break;
    Eigen::MatrixXd upstream = weights_[k].transpose() * delta;
    if (k == 0) {
      *grad_input = std::move(upstream);
      break;
    }
    // ReLU derivative from the stored post-activation.
    delta = upstream.cwiseProduct((in.array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    n += static_cast<std::size_t>(weights_[k].size() + biases_[k].size());
  }
  return n;
}

std::vector<double> Mlp::parameters() const {
  MlpGradients view{weights_, biases_};
  return flatten(view);
}

std::vector<double> Mlp::flatten(const MlpGradients& grads) {
  std::vector<double> flat;
  for (std::size_t k = 0; k < grads.weights.size(); ++k) {
    const auto& w = grads.weights[k];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    }
    for (Eigen::Index r = 0; r < grads.biases[k].size(); ++r) flat.push_back(grads.biases[k](r));
  }
  return flat;
}

void Mlp::set_parameters(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw DimensionMismatch("expected " + std::to_string(parameter_count()) + " parameters, got " +
                            std::to_string(flat.size()));
  }
  std::size_t i = 0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    auto& w = weights_[k];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = flat[i++];
    }
    for (Eigen::Index r = 0; r < biases_[k].size(); ++r) biases_[k](r) = flat[i++];
  }
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.layer_sizes_ != b.layer_sizes_ || a.output_ != b.output_) return false;
  for (std::size_t k = 0; k < a.weights_.size(); ++k) {
    if (a.weights_[k] != b.weights_[k] || a.biases_[k] != b.biases_[k]) return false;
  }
  return true;
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  if (target.layer_sizes() != online.layer_sizes()) throw DimensionMismatch("soft update between different shapes");
  for (std::size_t k = 0; k < target.num_layers(); ++k) {
    target.weights()[k] = tau * online.weights()[k] + (1.0 - tau) * target.weights()[k];
    target.biases()[k] = tau * online.biases()[k] + (1.0 - tau) * target.biases()[k];
  }
}

double mse(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target) {
  return (prediction - target).squaredNorm() / static_cast<double>(prediction.size());
}

Eigen::MatrixXd mse_gradient(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target) {
  return (2.0 / static_cast<double>(prediction.size())) * (prediction - target);
}

}  // namespace queuerl
