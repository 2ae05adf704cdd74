#pragma once

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

namespace queuerl {

enum class OutputActivation { kIdentity, kSigmoid };

struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// Fully connected feed-forward network with ReLU hidden layers.
//
// Inputs and outputs are column-major batches: one column per sample.
class Mlp {
 public:
  // Activations of every layer from one forward pass; activations[0] is the
  // input, activations.back() the output.
  struct Tape {
    std::vector<Eigen::MatrixXd> activations;
  };

  Mlp() = default;
  // Weights and biases uniform in +-1/sqrt(fan_in).
  Mlp(std::vector<int> layer_sizes, OutputActivation output, std::mt19937_64& rng);
  static Mlp zeros(std::vector<int> layer_sizes, OutputActivation output);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& input) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& input, Tape& tape) const;

  // Back-propagates dL/d(output). Writes dL/d(input) when `grad_input` is set.
  MlpGradients backward(const Tape& tape, const Eigen::MatrixXd& grad_output,
                        Eigen::MatrixXd* grad_input = nullptr) const;
  // Same, starting from dL/d(pre-activation output), so the output
  // activation's derivative is not applied.
  MlpGradients backward_from_logits(const Tape& tape, const Eigen::MatrixXd& grad_logits,
                                    Eigen::MatrixXd* grad_input = nullptr) const;
  // Pre-activation output of the last layer, recomputed from a tape.
  Eigen::MatrixXd output_logits(const Tape& tape) const;

  int input_dim() const { return layer_sizes_.front(); }
  int output_dim() const { return layer_sizes_.back(); }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  OutputActivation output_activation() const { return output_; }
  std::size_t num_layers() const { return weights_.size(); }

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  // Flat views, layer by layer: weights row-major, then biases.
  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);
  static std::vector<double> flatten(const MlpGradients& grads);

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  std::vector<int> layer_sizes_;
  OutputActivation output_ = OutputActivation::kIdentity;
  std::vector<Eigen::MatrixXd> weights_;  // weights_[k]: sizes[k+1] x sizes[k]
  std::vector<Eigen::VectorXd> biases_;
};

// target <- tau * online + (1 - tau) * target, parameterwise.
void soft_update(Mlp& target, const Mlp& online, double tau);

// Mean over all entries of (prediction - target)^2, and its gradient.
double mse(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target);
Eigen::MatrixXd mse_gradient(const Eigen::MatrixXd& prediction, const Eigen::MatrixXd& target);

}  // namespace queuerl
