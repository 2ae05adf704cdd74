#include "queuerl/agent/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "queuerl/errors.hpp"

namespace queuerl {

namespace {

constexpr const char* kMagic = "queuerl-agent";

void write_network(std::ostream& out, const std::string& name, const Mlp& net) {
  out << "network " << name << ' '
      << (net.output_activation() == OutputActivation::kSigmoid ? "sigmoid" : "identity") << ' '
      << net.layer_sizes().size();
  for (int s : net.layer_sizes()) out << ' ' << s;
  out << '\n';
  for (std::size_t k = 0; k < net.num_layers(); ++k) {
    const auto& w = net.weights()[k];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << (c ? " " : "") << w(r, c);
      out << '\n';
    }
    const auto& b = net.biases()[k];
    for (Eigen::Index r = 0; r < b.size(); ++r) out << (r ? " " : "") << b(r);
    out << '\n';
  }
}

template <typename T>
T read_value(std::istream& in, const std::string& what) {
  T value{};
  if (!(in >> value)) throw CheckpointError("checkpoint truncated while reading " + what);
  return value;
}

void expect_token(std::istream& in, const std::string& token) {
  const auto got = read_value<std::string>(in, token);
  if (got != token) throw CheckpointError("checkpoint: expected '" + token + "', found '" + got + "'");
}

void read_network(std::istream& in, const std::string& name, Mlp& net) {
  expect_token(in, "network");
  expect_token(in, name);
  const auto activation = read_value<std::string>(in, name + " activation");
  const auto expected_activation = net.output_activation() == OutputActivation::kSigmoid ? "sigmoid" : "identity";
  if (activation != expected_activation) throw CheckpointError("checkpoint: wrong output activation for " + name);
  const auto count = read_value<std::size_t>(in, name + " layer count");
  std::vector<int> sizes;
  for (std::size_t i = 0; i < count; ++i) sizes.push_back(read_value<int>(in, name + " layer sizes"));
  if (sizes != net.layer_sizes()) throw CheckpointError("checkpoint: layer sizes of " + name + " do not match");
  std::vector<double> flat(net.parameter_count());
  for (double& v : flat) v = read_value<double>(in, name + " parameters");
  net.set_parameters(flat);
}

}  // namespace

void save_checkpoint(const DdpgAgent& agent, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  out.precision(17);
  const AgentParams& p = agent.params();
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "dims " << agent.state_dim() << ' ' << agent.action_dim() << '\n';
  out << "learning_rate " << p.learning_rate << '\n'
      << "num_epochs " << p.num_epochs << '\n'
      << "batch_size " << p.batch_size << '\n'
      << "planning_steps " << p.planning_steps << '\n'
      << "num_samples " << p.num_samples << '\n'
      << "num_episodes " << p.num_episodes << '\n'
      << "num_timesteps " << p.num_timesteps << '\n'
      << "target_update_frequency " << p.target_update_frequency << '\n'
      << "tau " << p.tau << '\n'
      << "gamma " << p.gamma << '\n'
      << "epsilon " << p.epsilon << '\n'
      << "action_logit_penalty " << p.action_logit_penalty << '\n'
      << "w1 " << p.w1 << '\n'
      << "w2 " << p.w2 << '\n'
      << "buffer_capacity " << p.buffer_capacity << '\n'
      << "seed " << p.seed << '\n'
      << "state_transform " << to_string(p.state_transform) << '\n'
      << "reward_transform " << to_string(p.reward_transform) << '\n'
      << "hidden_layers " << p.hidden_layers.size();
  for (int h : p.hidden_layers) out << ' ' << h;
  out << '\n';
  write_network(out, "actor", agent.actor());
  write_network(out, "critic", agent.critic());
  write_network(out, "target_actor", agent.target_actor());
  write_network(out, "target_critic", agent.target_critic());
  write_network(out, "next_state_model", agent.next_state_model());
  write_network(out, "reward_model", agent.reward_model());
  if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
}

DdpgAgent load_checkpoint(const std::filesystem::path& path, std::optional<std::size_t> state_dim,
                          std::optional<std::size_t> action_dim) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  expect_token(in, kMagic);
  const int version = read_value<int>(in, "version");
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  expect_token(in, "dims");
  const auto sdim = read_value<std::size_t>(in, "state dimension");
  const auto adim = read_value<std::size_t>(in, "action dimension");
  if ((state_dim && *state_dim != sdim) || (action_dim && *action_dim != adim)) {
    throw CheckpointError("checkpoint is for state/action dimensions " + std::to_string(sdim) + "/" +
                          std::to_string(adim) + ", which do not match the environment");
  }

  AgentParams p;
  auto field = [&](const char* name, auto& value) {
    expect_token(in, name);
    value = read_value<std::remove_reference_t<decltype(value)>>(in, name);
  };
  field("learning_rate", p.learning_rate);
  field("num_epochs", p.num_epochs);
  field("batch_size", p.batch_size);
  field("planning_steps", p.planning_steps);
  field("num_samples", p.num_samples);
  field("num_episodes", p.num_episodes);
  field("num_timesteps", p.num_timesteps);
  field("target_update_frequency", p.target_update_frequency);
  field("tau", p.tau);
  field("gamma", p.gamma);
  field("epsilon", p.epsilon);
  field("action_logit_penalty", p.action_logit_penalty);
  field("w1", p.w1);
  field("w2", p.w2);
  field("buffer_capacity", p.buffer_capacity);
  field("seed", p.seed);
  expect_token(in, "state_transform");
  p.state_transform = state_transform_from_string(read_value<std::string>(in, "state_transform"));
  expect_token(in, "reward_transform");
  p.reward_transform = reward_transform_from_string(read_value<std::string>(in, "reward_transform"));
  expect_token(in, "hidden_layers");
  const auto hidden = read_value<std::size_t>(in, "hidden layer count");
  p.hidden_layers.clear();
  for (std::size_t i = 0; i < hidden; ++i) p.hidden_layers.push_back(read_value<int>(in, "hidden layers"));

  DdpgAgent agent(sdim, adim, p);
  read_network(in, "actor", agent.actor());
  read_network(in, "critic", agent.critic());
  read_network(in, "target_actor", agent.target_actor());
  read_network(in, "target_critic", agent.target_critic());
  read_network(in, "next_state_model", agent.next_state_model());
  read_network(in, "reward_model", agent.reward_model());
  agent.reset_optimizers();
  return agent;
}

}  // namespace queuerl
