#include "queuerl/io/run.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "queuerl/agent/checkpoint.hpp"
#include "queuerl/errors.hpp"
#include "queuerl/evaluation/burn_in.hpp"
#include "queuerl/evaluation/convergence.hpp"
#include "queuerl/evaluation/disruption.hpp"
#include "queuerl/evaluation/robustness.hpp"
#include "queuerl/exploration/exploration.hpp"
#include "queuerl/io/csv.hpp"
#include "queuerl/io/hyperparams.hpp"
#include "queuerl/io/network_config.hpp"
#include "queuerl/tuning/random_search.hpp"

namespace queuerl {

Function function_from_string(const std::string& name) {
  if (name == "train") return Function::kTrain;
  if (name == "tune") return Function::kTune;
  if (name == "evaluate") return Function::kEvaluate;
  throw ConfigError("unknown function '" + name + "' (expected train, tune or evaluate)");
}

Evaluator evaluator_from_string(const std::string& name) {
  if (name == "burn_in") return Evaluator::kBurnIn;
  if (name == "convergence") return Evaluator::kConvergence;
  if (name == "noise") return Evaluator::kNoise;
  if (name == "disruption") return Evaluator::kDisruption;
  if (name == "robustness") return Evaluator::kRobustness;
  throw ConfigError("unknown evaluator '" + name + "' (expected burn_in, convergence, noise, disruption or robustness)");
}

NoiseMode noise_mode_from_string(const std::string& name) {
  if (name == "retrain") return NoiseMode::kRetrain;
  if (name == "evaluate") return NoiseMode::kEvaluateOnly;
  throw ConfigError("unknown noise mode '" + name + "' (expected retrain or evaluate)");
}

namespace {

struct Inputs {
  TopologyConfig topology;
  HyperparamFile hyper;
};

Inputs load_inputs(const RunConfig& rc) {
  if (rc.config_file.empty()) throw ConfigError("--config_file is required");
  Inputs in{parse_network_config(rc.config_file), {}};
  if (!rc.param_file.empty()) in.hyper = parse_hyperparams(rc.param_file);
  return in;
}

std::string default_run_name() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  localtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y%m%d-%H%M%S");
  return s.str();
}

std::string optional_cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

ExplorationResult train_fresh(const Inputs& in, DdpgAgent& agent) {
  RlEnv env(in.topology, in.hyper.env_options(), in.hyper.params.seed);
  return train_with_blockage_exploration(agent, env);
}

DdpgAgent make_agent(const Inputs& in) {
  RlEnv probe(in.topology, in.hyper.env_options(), in.hyper.params.seed);
  return DdpgAgent(probe.state_dim(), probe.action_dim(), in.hyper.params);
}

void write_key_states(const StateTracker& tracker, const std::filesystem::path& path) {
  CsvWriter csv(path, {"rank", "reward", "visits", "state"});
  std::size_t rank = 0;
  for (const StateTracker::KeyState& k : tracker.key_states()) {
    std::string state;
    for (std::size_t i = 0; i < k.state.delays.size(); ++i) state += (i ? " " : "") + format_number(k.state.delays[i]);
    csv.values(rank++, k.reward, tracker.visit_count(k.state), state);
  }
}

int do_train(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  DdpgAgent agent = make_agent(in);
  const ExplorationResult result = train_fresh(in, agent);
  write_training_csvs(result.trace, rc.data_file);
  write_key_states(result.tracker, rc.data_file / "key_states.csv");
  if (rc.plot_curves) write_plot_data(result.trace, rc.image_file);
  if (rc.save_file) {
    const auto path = rc.data_file / ((rc.run_name.empty() ? default_run_name() : rc.run_name) + ".agent");
    save_checkpoint(agent, path);
    out << "checkpoint: " << path.string() << '\n';
  }
  const auto& eps = result.trace.episodes;
  out << "trained " << eps.size() << " episodes";
  if (!eps.empty()) out << "; final average reward " << format_number(eps.back().average_reward());
  out << '\n';
  return kExitOk;
}

int do_tune(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  if (!in.hyper.search_space) throw ConfigError("the hyperparameter file declares no search ranges or choices");
  const SearchSpace& space = *in.hyper.search_space;
  const auto results = random_search(space, in.topology, in.hyper.env_options(), in.hyper.params, in.hyper.params.seed);
  std::vector<std::string> header{"rank", "trial", "train_seed", "objective"};
  for (const auto& [name, spec] : space.fields) header.push_back(name);
  CsvWriter csv(rc.data_file / "tuning_results.csv", header);
  for (std::size_t rank = 0; rank < results.size(); ++rank) {
    const TrialResult& r = results[rank];
    std::vector<std::string> row{std::to_string(rank), std::to_string(r.trial), std::to_string(r.train_seed),
                                 format_number(r.objective)};
    for (const auto& [name, spec] : space.fields) row.push_back(format_number(find_numeric_field(name)->get(r.params)));
    csv.row(row);
  }
  out << "tuned " << results.size() << " trials; best objective " << format_number(results.front().objective) << '\n';
  return kExitOk;
}

DdpgAgent trained_agent(const RunConfig& rc, const Inputs& in, bool train_if_missing) {
  RlEnv probe(in.topology, in.hyper.env_options(), in.hyper.params.seed);
  if (rc.agent_file) return load_checkpoint(*rc.agent_file, probe.state_dim(), probe.action_dim());
  DdpgAgent agent(probe.state_dim(), probe.action_dim(), in.hyper.params);
  if (train_if_missing) train_fresh(in, agent);
  return agent;
}

int eval_burn_in(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  DdpgAgent agent = make_agent(in);
  const ExplorationResult result = train_fresh(in, agent);
  std::vector<double> rewards;
  for (const EpisodeTrace& ep : result.trace.episodes) rewards.insert(rewards.end(), ep.rewards.begin(), ep.rewards.end());
  const BurnInReport report = detect_burn_in(rewards, rc.window_size, rc.threshold, rc.consecutive_points);
  CsvWriter csv(rc.data_file / "burn_in.csv", {"timestep", "reward", "smoothed", "derivative"});
  for (std::size_t t = 0; t < rewards.size(); ++t) {
    std::string smoothed;
    std::string derivative;
    if (t + 1 >= rc.window_size) {
      const std::size_t k = t + 1 - rc.window_size;
      smoothed = format_number(report.smoothed_curve[k]);
      if (k >= 1) derivative = format_number(report.derivative_curve[k - 1]);
    }
    csv.row({std::to_string(t), format_number(rewards[t]), smoothed, derivative});
  }
  CsvWriter summary(rc.data_file / "burn_in_summary.csv",
                    {"stabilization_index", "window_size", "threshold", "consecutive_points"});
  summary.values(optional_cell(report.stabilization_index), rc.window_size, rc.threshold, rc.consecutive_points);
  out << "burn-in "
      << (report.stabilization_index ? "ends at timestep " + std::to_string(*report.stabilization_index)
                                     : std::string("not detected"))
      << '\n';
  return kExitOk;
}

int eval_convergence(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  const ConvergenceReport report = convergence_train(in.hyper.params, in.topology, in.hyper.env_options(),
                                                     rc.window_size, rc.threshold, rc.consecutive_points);
  CsvWriter csv(rc.data_file / "convergence.csv", {"episode", "eval_reward"});
  for (const ConvergencePoint& p : report.points) csv.values(p.episode, p.eval_reward);
  std::string reason = "budget";
  if (report.stop_reason) reason = *report.stop_reason == StopReason::kLocalMaximum ? "local_maximum" : "plateau";
  CsvWriter summary(rc.data_file / "convergence_summary.csv",
                    {"stop_reason", "episodes_trained", "first_local_maximum_episode"});
  summary.values(reason, report.points.empty() ? 0 : report.points.back().episode,
                 report.first_local_maximum_episode ? std::to_string(*report.first_local_maximum_episode) : "");
  out << "convergence: stopped by " << reason << " after " << report.points.size() << " evaluations\n";
  return kExitOk;
}

int eval_noise(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  DdpgAgent agent = trained_agent(rc, in, rc.noise_mode == NoiseMode::kEvaluateOnly);
  const NoiseComparison cmp = evaluate_noise(agent, in.topology, in.hyper.env_options(), rc.noise, rc.noise_mode,
                                             rc.time_steps, episode_seed(in.hyper.params.seed, -4));
  CsvWriter csv(rc.data_file / "noise.csv", {"timestep", "standard_throughput", "noisy_throughput"});
  for (std::size_t t = 0; t < cmp.standard_throughput.size(); ++t) {
    csv.values(t, cmp.standard_throughput[t], cmp.noisy_throughput[t]);
  }
  CsvWriter summary(rc.data_file / "noise_summary.csv",
                    {"standard_slope", "noisy_slope", "final_standard_throughput", "final_noisy_throughput"});
  summary.values(cmp.standard_slope, cmp.noisy_slope, cmp.standard_throughput.back(), cmp.noisy_throughput.back());
  out << "noise: final throughput " << format_number(cmp.standard_throughput.back()) << " standard vs "
      << format_number(cmp.noisy_throughput.back()) << " noisy\n";
  return kExitOk;
}

int eval_disruption(const RunConfig& rc, std::ostream& out) {
  if (!rc.node) throw ConfigError("the disruption evaluator needs --node");
  const Inputs in = load_inputs(rc);
  if (!in.topology.has_node(*rc.node)) throw UnknownNode("unknown node " + std::to_string(*rc.node));
  DdpgAgent agent = trained_agent(rc, in, true);
  const DisruptionReport report = evaluate_disruption(agent, in.topology, in.hyper.env_options(), *rc.node,
                                                      rc.time_steps, episode_seed(in.hyper.params.seed, -5));
  std::vector<std::string> header{"phase", "timestep", "throughput_rate"};
  const auto cols = proba_columns(report.pre_probas);
  header.insert(header.end(), cols.begin(), cols.end());
  CsvWriter csv(rc.data_file / "disruption.csv", header);
  long long t = 0;
  auto emit = [&](const char* phase, const std::vector<RolloutStep>& steps) {
    for (const RolloutStep& s : steps) {
      std::vector<std::string> row{phase, std::to_string(t++), format_number(s.throughput_rate)};
      const auto p = proba_cells(s.transition_probas);
      row.insert(row.end(), p.begin(), p.end());
      csv.row(row);
    }
  };
  emit("pre", report.pre_steps);
  emit("post", report.post_steps);
  CsvWriter summary(rc.data_file / "disruption_summary.csv", {"affected_node", "pre_throughput", "post_throughput"});
  summary.values(report.affected_node, report.pre_throughput, report.post_throughput);
  out << "disruption of node " << report.affected_node << ": throughput " << format_number(report.pre_throughput)
      << " -> " << format_number(report.post_throughput) << '\n';
  return kExitOk;
}

int eval_robustness(const RunConfig& rc, std::ostream& out) {
  const Inputs in = load_inputs(rc);
  RobustnessOptions opts;
  opts.num_agents = rc.num_agents;
  opts.time_steps = rc.time_steps;
  opts.z = rc.z;
  opts.margin = rc.margin;
  const RobustnessReport report = robustness_evaluate(in.hyper.params, in.topology, in.hyper.env_options(), opts);
  std::vector<std::string> header{"row", "agent"};
  const auto cols = proba_columns(report.per_agent_final_probas.front());
  header.insert(header.end(), cols.begin(), cols.end());
  for (const char* c : {"sigma", "z", "margin", "required_runs"}) header.emplace_back(c);
  CsvWriter csv(rc.data_file / "robustness.csv", header);
  for (std::size_t k = 0; k < report.per_agent_final_probas.size(); ++k) {
    std::vector<std::string> row{"agent", std::to_string(k)};
    const auto p = proba_cells(report.per_agent_final_probas[k]);
    row.insert(row.end(), p.begin(), p.end());
    row.insert(row.end(), 4, "");
    csv.row(row);
  }
  std::vector<std::string> row{"summary", ""};
  row.insert(row.end(), cols.size(), "");
  for (double v : {report.sigma, report.z, report.margin}) row.push_back(format_number(v));
  row.push_back(std::to_string(report.required_runs));
  csv.row(row);
  out << "robustness: sigma " << format_number(report.sigma) << ", required runs " << report.required_runs << '\n';
  return kExitOk;
}

int dispatch(const RunConfig& rc, std::ostream& out) {
  switch (rc.function) {
    case Function::kTrain:
      return do_train(rc, out);
    case Function::kTune:
      return do_tune(rc, out);
    case Function::kEvaluate:
      break;
  }
  if (!rc.evaluator) throw ConfigError("--function evaluate needs --evaluator");
  switch (*rc.evaluator) {
    case Evaluator::kBurnIn:
      return eval_burn_in(rc, out);
    case Evaluator::kConvergence:
      return eval_convergence(rc, out);
    case Evaluator::kNoise:
      return eval_noise(rc, out);
    case Evaluator::kDisruption:
      return eval_disruption(rc, out);
    case Evaluator::kRobustness:
      return eval_robustness(rc, out);
  }
  return kExitInternal;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto fail = [&](int code, const char* kind, const std::exception& e) {
    err << "error (" << kind << "): " << e.what() << '\n';
    return code;
  };
  try {
    return dispatch(config, out);
  } catch (const ConfigError& e) {
    return fail(kExitConfig, "config", e);
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse", e);
  } catch (const FileError& e) {
    return fail(kExitFile, "file", e);
  } catch (const UnknownEdge& e) {
    return fail(kExitUnknownEdge, "unknown edge", e);
  } catch (const UnknownNode& e) {
    return fail(kExitUnknownNode, "unknown node", e);
  } catch (const DimensionMismatch& e) {
    return fail(kExitDimensionMismatch, "dimension mismatch", e);
  } catch (const NoArrivals& e) {
    return fail(kExitNoArrivals, "no arrivals", e);
  } catch (const EmptyBuffer& e) {
    return fail(kExitEmptyBuffer, "empty buffer", e);
  } catch (const InsufficientBuffer& e) {
    return fail(kExitInsufficientBuffer, "insufficient buffer", e);
  } catch (const InsufficientData& e) {
    return fail(kExitInsufficientData, "insufficient data", e);
  } catch (const NoBlockableNodes& e) {
    return fail(kExitNoBlockableNodes, "no blockable nodes", e);
  } catch (const CheckpointError& e) {
    return fail(kExitCheckpoint, "checkpoint", e);
  } catch (const std::exception& e) {
    return fail(kExitInternal, "internal", e);
  }
}

}  // namespace queuerl
