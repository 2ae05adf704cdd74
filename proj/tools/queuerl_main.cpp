#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "queuerl/errors.hpp"
#include "queuerl/io/run.hpp"

int main(int argc, char** argv) {
  using namespace queuerl;
  CLI::App app{"Dyna-DDPG routing agent for queueing networks"};
  RunConfig rc;
  std::string function = "train";
  std::string evaluator;
  std::string noise_mode = "evaluate";
  std::string agent_file;
  NodeId node = 0;

  app.add_option("--function", function, "train, tune or evaluate")->capture_default_str();
  app.add_option("--config_file", rc.config_file, "network YAML")->required();
  app.add_option("--param_file", rc.param_file, "hyperparameter YAML");
  app.add_option("--data_file", rc.data_file, "CSV output directory")->capture_default_str();
  app.add_option("--image_file", rc.image_file, "plot-data output directory")->capture_default_str();
  app.add_option("--plot_curves", rc.plot_curves, "write plot-data CSVs")->capture_default_str();
  app.add_option("--save_file", rc.save_file, "save the agent checkpoint")->capture_default_str();
  app.add_option("--run_name", rc.run_name, "checkpoint name (default: timestamp)");

  app.add_option("--evaluator", evaluator, "burn_in, convergence, noise, disruption or robustness");
  app.add_option("--agent_file", agent_file, "pre-trained checkpoint for noise/disruption");
  auto* node_opt = app.add_option("--node", node, "node to block (disruption)");
  app.add_option("--window_size", rc.window_size)->capture_default_str();
  app.add_option("--threshold", rc.threshold)->capture_default_str();
  app.add_option("--consecutive_points", rc.consecutive_points)->capture_default_str();
  app.add_option("--noise_mean", rc.noise.mean)->capture_default_str();
  app.add_option("--noise_variance", rc.noise.variance)->capture_default_str();
  app.add_option("--noise_frequency", rc.noise.frequency)->capture_default_str();
  app.add_option("--noise_mode", noise_mode, "retrain or evaluate")->capture_default_str();
  app.add_option("--num_agents", rc.num_agents)->capture_default_str();
  app.add_option("--z", rc.z)->capture_default_str();
  app.add_option("--margin", rc.margin)->capture_default_str();
  app.add_option("--time_steps", rc.time_steps, "rollout length for evaluators")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    rc.function = function_from_string(function);
    if (!evaluator.empty()) rc.evaluator = evaluator_from_string(evaluator);
    rc.noise_mode = noise_mode_from_string(noise_mode);
  } catch (const Error& e) {
    std::cerr << "error (usage): " << e.what() << '\n';
    return kExitUsage;
  }
  if (!agent_file.empty()) rc.agent_file = agent_file;
  if (node_opt->count() > 0) rc.node = node;
  return run(rc, std::cout, std::cerr);
}
