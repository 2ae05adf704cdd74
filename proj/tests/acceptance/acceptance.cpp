// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance 4 5        run a subset
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "queuerl/agent/mlp.hpp"
#include "queuerl/agent/replay_buffer.hpp"
#include "queuerl/errors.hpp"
#include "queuerl/evaluation/burn_in.hpp"
#include "queuerl/evaluation/disruption.hpp"
#include "queuerl/evaluation/noise_evaluation.hpp"
#include "queuerl/evaluation/robustness.hpp"
#include "queuerl/exploration/exploration.hpp"
#include "queuerl/io/hyperparams.hpp"
#include "queuerl/io/network_config.hpp"
#include "queuerl/io/run.hpp"
#include "queuerl/rl_env/reward.hpp"

namespace fs = std::filesystem;
using namespace queuerl;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Greedy steps used when reading off a trained policy.
constexpr int kPolicySteps = 50;
constexpr int kSeeds = 5;

// ---------------------------------------------------------------------------
Outcome mm1_sojourn() {
  std::string detail;
  bool pass = true;
  for (double lambda : {0.3, 0.5, 0.7}) {
    const auto t0 = Clock::now();
    QueueNetwork net = build_network(testing::mm1_config(lambda, 1.0), 2024);
    while (net.exits_total().at(0) < 50'000) net.simulate(10'000);
    double sum = 0.0;
    std::size_t n = 0;
    for (const JobRecord& r : net.queue_data(1)) {
      if (!r.serviced) continue;
      sum += r.exit_time - r.arrival_time;
      if (++n == 50'000) break;
    }
    const double mean = sum / static_cast<double>(n);
    const double expected = 1.0 / (1.0 - lambda);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(mean - expected) <= 0.05 * expected && secs < 10.0;
    pass = pass && ok;
    detail += fmt("%slambda %.1f: %.4f vs %.4f (%.2fs)", detail.empty() ? "" : "; ", lambda, mean, expected, secs);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
struct HandLog {
  std::vector<std::vector<JobRecord>> edges;
  std::int64_t exits = 0;
  std::int64_t arrivals = 0;
};

JobRecord job(double arrival, double exit, bool serviced) {
  JobRecord r;
  r.arrival_time = arrival;
  r.exit_time = exit;
  r.serviced = serviced;
  return r;
}

// Reward written out term by term from its definition.
double straight_line_reward(const HandLog& log) {
  double outer = 0.0;
  int included = 0;
  for (const auto& edge : log.edges) {
    double total = 0.0;
    int t = 0;
    for (const JobRecord& r : edge) {
      if (r.serviced) {
        total += r.exit_time - r.arrival_time;
        t += 1;
      }
    }
    if (t > 0) {
      outer += total / t;
      included += 1;
    }
  }
  const double d_bar = included > 0 ? outer / included : 0.0;
  const double r = static_cast<double>(log.exits) / static_cast<double>(log.arrivals);
  if (r == 0.0) return -d_bar * (1.0 / 1e-3);
  return -d_bar / r;
}

std::vector<HandLog> hand_logs() {
  std::vector<HandLog> logs;
  // D = 2.0, R = 0.8 -> -2.5
  logs.push_back({{{job(0, 1, true), job(1, 4, true)}}, 4, 5});
  // zero exits -> floor
  logs.push_back({{{job(0, 1, true), job(1, 4, true)}}, 0, 5});
  // unserviced records ignored
  logs.push_back({{{job(0, 2, true), job(1, 0, false), job(3, 0, false)}}, 1, 3});
  // edge with no serviced job left out of the outer mean
  logs.push_back({{{job(0, 3, true)}, {job(1, 0, false)}}, 1, 2});
  // empty edge log
  logs.push_back({{{}, {job(0.5, 1.25, true)}}, 1, 1});
  // nothing serviced anywhere
  logs.push_back({{{job(0, 0, false)}}, 0, 1});
  // three edges, fractional times
  logs.push_back({{{job(0.1, 0.35, true), job(0.2, 0.9, true)},
                   {job(0.35, 1.7, true)},
                   {job(0.9, 2.05, true), job(1.1, 2.2, true), job(1.3, 0, false)}},
                  2,
                  3});
  // R > 1 is possible once earlier arrivals exit in a later window
  logs.push_back({{{job(10, 11, true)}}, 3, 2});
  // long edge
  {
    HandLog l;
    l.edges.emplace_back();
    for (int j = 0; j < 200; ++j) l.edges.back().push_back(job(j * 0.37, j * 0.37 + 0.1 * (j % 7 + 1), j % 5 != 4));
    l.exits = 150;
    l.arrivals = 200;
    logs.push_back(l);
  }
  // randomized logs
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  while (logs.size() < 40) {
    HandLog l;
    const int edges = 1 + static_cast<int>(rng() % 12);
    for (int e = 0; e < edges; ++e) {
      l.edges.emplace_back();
      const int jobs = static_cast<int>(rng() % 30);
      for (int j = 0; j < jobs; ++j) {
        const double a = u(rng);
        const bool done = rng() % 4 != 0;
        l.edges.back().push_back(job(a, done ? a + u(rng) : 0.0, done));
      }
    }
    l.arrivals = 1 + static_cast<std::int64_t>(rng() % 100);
    l.exits = static_cast<std::int64_t>(rng() % (l.arrivals + 1));
    logs.push_back(l);
  }
  return logs;
}

Outcome reward_oracle() {
  const auto logs = hand_logs();
  double worst = 0.0;
  bool example_ok = false;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    std::vector<std::span<const JobRecord>> spans;
    for (const auto& e : logs[i].edges) spans.emplace_back(e);
    const double got = compute_reward(spans, logs[i].exits, logs[i].arrivals).reward;
    const double want = straight_line_reward(logs[i]);
    const double rel = want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
    worst = std::max(worst, rel);
    if (i == 0) example_ok = std::abs(got + 2.5) <= 2.5e-12;
  }
  return {worst <= 1e-12 && example_ok && logs.size() >= 20,
          fmt("%zu logs, worst relative error %.2e, -2.5 example %s", logs.size(), worst, example_ok ? "ok" : "wrong")};
}

// ---------------------------------------------------------------------------
// Norm-wise relative error of backprop against central differences of the
// probe L = sum(w .* f(x)).
double gradient_error(Mlp net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& w, double h) {
  Mlp::Tape tape;
  net.forward(x, tape);
  const MlpGradients grads = net.backward(tape, w);
  const std::vector<double> analytic = Mlp::flatten(grads);
  auto probe = [&] { return (net.forward(x).array() * w.array()).sum(); };
  std::vector<double> numeric;
  numeric.reserve(analytic.size());
  auto perturb = [&](double& p) {
    const double saved = p;
    p = saved + h;
    const double up = probe();
    p = saved - h;
    const double down = probe();
    p = saved;
    numeric.push_back((up - down) / (2.0 * h));
  };
  // Same order as Mlp::flatten: per layer, weights row by row, then biases.
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    Eigen::MatrixXd& W = net.weights()[l];
    for (Eigen::Index r = 0; r < W.rows(); ++r) {
      for (Eigen::Index c = 0; c < W.cols(); ++c) perturb(W(r, c));
    }
    Eigen::VectorXd& b = net.biases()[l];
    for (Eigen::Index k = 0; k < b.size(); ++k) perturb(b.data()[k]);
  }
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    diff += (analytic[i] - numeric[i]) * (analytic[i] - numeric[i]);
    na += analytic[i] * analytic[i];
    nn += numeric[i] * numeric[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nn), 1e-12});
}

Outcome gradient_check() {
  const auto t0 = Clock::now();
  const TopologyConfig eleven = testing::eleven_node_config();
  const int s = static_cast<int>(eleven.serviced_edges().size());
  const int a = s;
  const AgentParams defaults;
  auto sizes = [&](int in, int out) {
    std::vector<int> v{in};
    v.insert(v.end(), defaults.hidden_layers.begin(), defaults.hidden_layers.end());
    v.push_back(out);
    return v;
  };
  const std::vector<std::pair<std::vector<int>, OutputActivation>> shapes{
      {sizes(s, a), OutputActivation::kSigmoid},       // actor
      {sizes(s + a, 1), OutputActivation::kIdentity},  // critic
      {sizes(s + a, s), OutputActivation::kIdentity},  // next-state model
      {sizes(s + a, 1), OutputActivation::kIdentity}}; // reward model
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (const auto& [layer_sizes, out] : shapes) {
    for (int draw = 0; draw < 10; ++draw) {
      Mlp net(layer_sizes, out, rng);
      Eigen::MatrixXd x(layer_sizes.front(), 4);
      Eigen::MatrixXd w(layer_sizes.back(), 4);
      for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
      for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = g(rng);
      worst = std::max(worst, gradient_error(net, x, w, 1e-5));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-4 && secs < 30.0, fmt("4 shapes x 10 draws, worst relative error %.2e (%.1fs)", worst, secs)};
}

// ---------------------------------------------------------------------------
HyperparamFile acceptance_params(const char* name) {
  return parse_hyperparams(testing::repo_path(fs::path("configs/acceptance") / name));
}

DdpgAgent train_agent(const TopologyConfig& topo, const HyperparamFile& hp, std::uint64_t seed) {
  AgentParams p = hp.params;
  p.seed = seed;
  RlEnv env(topo, hp.env_options(), seed);
  DdpgAgent agent(env.state_dim(), env.action_dim(), p);
  train_with_blockage_exploration(agent, env);
  return agent;
}

Outcome three_way_routing() {
  const auto t0 = Clock::now();
  const TopologyConfig topo = parse_network_config(testing::repo_path("configs/three_way_network.yml"));
  const HyperparamFile hp = acceptance_params("three_way.yml");
  int ranked = 0;
  std::string detail;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const DdpgAgent agent = train_agent(topo, hp, static_cast<std::uint64_t>(seed));
    RlEnv env(topo, hp.env_options(), episode_seed(static_cast<std::uint64_t>(seed), -2));
    const auto steps = rollout(agent, env, kPolicySteps);
    const auto& row = steps.back().transition_probas.at(1);
    const double p2 = row.at(2), p3 = row.at(3), p4 = row.at(4);
    const bool ok = p3 > p2 && p3 > p4 && p4 < p2;
    ranked += ok ? 1 : 0;
    detail += fmt("%s(%.3g, %.3g, %.3g)", detail.empty() ? "" : " ", p2, p3, p4);
  }
  const double secs = seconds_since(t0);
  return {ranked >= 4 && secs <= 15 * 60.0,
          fmt("%d/5 seeds rank node 3 first and node 4 last; p(2, 3, 4) = %s (%.0fs)", ranked, detail.c_str(), secs)};
}

Outcome blockage_adaptation() {
  const auto t0 = Clock::now();
  const TopologyConfig topo = parse_network_config(testing::repo_path("configs/eleven_node_network.yml"));
  const HyperparamFile hp = acceptance_params("blockage.yml");
  constexpr NodeId kBlocked = 3;
  int adapted = 0;
  std::string detail;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const DdpgAgent agent = train_agent(topo, hp, static_cast<std::uint64_t>(seed));
    const DisruptionReport rep = evaluate_disruption(agent, topo, hp.env_options(), kBlocked, kPolicySteps,
                                                     episode_seed(static_cast<std::uint64_t>(seed), -5));
    const double pre = rep.pre_probas.at(1).at(kBlocked);
    const double post = rep.post_probas.at(1).at(kBlocked);
    adapted += (post <= 0.2 && post < 0.5 * pre) ? 1 : 0;
    detail += fmt("%s%.2f->%.2f", detail.empty() ? "" : " ", pre, post);
  }
  const double secs = seconds_since(t0);
  return {adapted >= 4 && secs <= 30 * 60.0,
          fmt("%d/5 seeds; p(1->3) before->after blocking node 3: %s (%.0fs)", adapted, detail.c_str(), secs)};
}

// ---------------------------------------------------------------------------
Outcome robustness_arithmetic() {
  const int example = required_runs(1.96, 0.4, 1.0);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> z(0.0, 4.0), sigma(0.0, 0.5), margin(0.01, 2.0), up(1.0, 3.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double zi = z(rng), si = sigma(rng), ei = margin(rng);
    const int n = required_runs(zi, si, ei);
    const double exact = std::ceil(std::pow(zi * si / ei, 2));
    if (n != std::max(1, static_cast<int>(exact))) ++violations;
    if (required_runs(zi * up(rng), si, ei) < n) ++violations;
    if (required_runs(zi, si * up(rng), ei) < n) ++violations;
    if (required_runs(zi, si, ei * up(rng)) > n) ++violations;
  }
  return {example == 1 && violations == 0,
          fmt("required_runs(1.96, 0.4, 1) = %d; %d violations over 1000 random triples", example, violations)};
}

// ---------------------------------------------------------------------------
std::optional<std::size_t> scan_burn_in(const std::vector<double>& r, std::size_t w, double threshold, std::size_t c) {
  auto mean_ending_at = [&](std::size_t t) {
    double s = 0.0;
    for (std::size_t j = t + 1 - w; j <= t; ++j) s += r[j];
    return s / static_cast<double>(w);
  };
  for (std::size_t t = w - 1; t + c < r.size(); ++t) {
    bool ok = true;
    for (std::size_t j = 0; j < c && ok; ++j) ok = std::abs(mean_ending_at(t + j + 1) - mean_ending_at(t + j)) < threshold;
    if (ok) return t;
  }
  return std::nullopt;
}

Outcome burn_in_oracle() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int matches = 0, detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double amplitude = 1.0 + 99.0 * u(rng);
    const double ratio = 0.5 + 0.49 * u(rng);
    const double offset = -50.0 * u(rng);
    const std::size_t n = 30 + rng() % 171;
    const std::size_t w = 1 + rng() % 10;
    const std::size_t c = 1 + rng() % 5;
    const double threshold = std::pow(10.0, -3.0 + 3.0 * u(rng));
    std::vector<double> r;
    for (std::size_t t = 0; t < n; ++t) r.push_back(offset - amplitude * std::pow(ratio, static_cast<double>(t)));
    const auto got = detect_burn_in(r, w, threshold, c).stabilization_index;
    matches += got == scan_burn_in(r, w, threshold, c) ? 1 : 0;
    detected += got ? 1 : 0;
  }
  return {matches == 100, fmt("%d/100 parameterizations match the scan (%d stabilize)", matches, detected)};
}

// ---------------------------------------------------------------------------
Outcome replay_buffer_exhaustive() {
  int cases = 0, failures = 0;
  std::mt19937_64 rng(3);
  for (std::size_t capacity = 1; capacity <= 8; ++capacity) {
    for (std::size_t k = 0; k <= 8; ++k) {
      ++cases;
      ReplayBuffer buf(capacity);
      const std::size_t inserted = capacity + k;
      bool ok = true;
      for (std::size_t i = 0; i < inserted; ++i) {
        Experience e;
        e.reward = static_cast<double>(i);
        buf.push(e);
        ok = ok && buf.size() == std::min(i + 1, capacity);
      }
      for (std::size_t j = 0; j < capacity; ++j) ok = ok && buf[j].reward == static_cast<double>(k + j);
      for (std::size_t b = 1; b <= capacity + 2; ++b) {
        if (b > buf.size()) {
          try {
            buf.sample(b, rng);
            ok = false;
          } catch (const InsufficientBuffer&) {
          }
          continue;
        }
        std::set<double> seen;
        for (const Experience& e : buf.sample(b, rng)) {
          ok = ok && e.reward >= static_cast<double>(k);
          seen.insert(e.reward);
        }
        ok = ok && seen.size() == b;
      }
      failures += ok ? 0 : 1;
    }
  }
  return {failures == 0, fmt("%d/%d (capacity, k) cases correct", cases - failures, cases)};
}

// ---------------------------------------------------------------------------
Outcome noise_evaluation() {
  const auto t0 = Clock::now();
  const TopologyConfig topo = parse_network_config(testing::repo_path("configs/eleven_node_network.yml"));
  const HyperparamFile hp = parse_hyperparams(testing::repo_path("configs/hyperparams.yml"));
  std::vector<double> final_standard, final_noisy, slopes;
  for (int seed = 0; seed < kSeeds; ++seed) {
    DdpgAgent agent = train_agent(topo, hp, static_cast<std::uint64_t>(seed));
    const NoiseComparison cmp = evaluate_noise(agent, topo, hp.env_options(), NoiseConfig{}, NoiseMode::kEvaluateOnly,
                                               kEvaluationTimesteps, episode_seed(static_cast<std::uint64_t>(seed), -4));
    final_standard.push_back(cmp.standard_throughput.back());
    final_noisy.push_back(cmp.noisy_throughput.back());
    slopes.push_back(cmp.noisy_slope);
  }
  const bool slopes_ok = std::all_of(slopes.begin(), slopes.end(), [](double s) { return s > 0.0; });
  const double ms = median(final_standard), mn = median(final_noisy);
  return {slopes_ok && mn <= ms,
          fmt("noisy slopes min %.2e; median final throughput noisy %.4f vs standard %.4f (%.0fs)",
              *std::min_element(slopes.begin(), slopes.end()), mn, ms, seconds_since(t0))};
}

// ---------------------------------------------------------------------------
double seconds_per_episode(int num_nodes, const HyperparamFile& hp, int episodes) {
  const TopologyConfig topo = testing::feed_forward_config(num_nodes);
  AgentParams p = hp.params;
  p.num_episodes = episodes;
  RlEnv env(topo, hp.env_options(), p.seed);
  DdpgAgent agent(env.state_dim(), env.action_dim(), p);
  const auto t0 = Clock::now();
  train_with_blockage_exploration(agent, env);
  return seconds_since(t0) / episodes;
}

Outcome scaling_smoke() {
  const HyperparamFile hp = parse_hyperparams(testing::repo_path("configs/hyperparams.yml"));
  const auto t0 = Clock::now();
  const double full = seconds_per_episode(100, hp, hp.params.num_episodes);
  const double full_secs = seconds_since(t0);
  constexpr int kProbe = 10;
  std::vector<std::pair<int, double>> points;
  for (int n : {10, 25, 50}) points.emplace_back(n, seconds_per_episode(n, hp, kProbe));
  // The full run's first kProbe episodes are not timed separately; probe 100 nodes too.
  points.emplace_back(100, seconds_per_episode(100, hp, kProbe));
  // Least-squares exponent of time against node count on log-log axes.
  double mx = 0, my = 0;
  for (auto [n, t] : points) {
    mx += std::log(n);
    my += std::log(t);
  }
  mx /= points.size();
  my /= points.size();
  double sxy = 0, sxx = 0;
  for (auto [n, t] : points) {
    sxy += (std::log(n) - mx) * (std::log(t) - my);
    sxx += (std::log(n) - mx) * (std::log(n) - mx);
  }
  const double exponent = sxy / sxx;
  const double ratio = points.back().second / points.front().second;
  const bool ok = full_secs <= 30 * 60.0 && ratio < 100.0 && exponent < 2.0;
  return {ok, fmt("100-node run %d episodes in %.0fs (%.2fs/episode); 10->100 nodes per-episode ratio %.1f, "
                  "fitted exponent %.2f",
                  hp.params.num_episodes, full_secs, full, ratio, exponent)};
}

// ---------------------------------------------------------------------------
std::map<std::string, std::string> csv_files(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.path().extension() != ".csv") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    out[fs::relative(entry.path(), root).string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return out;
}

Outcome reproducibility() {
  const fs::path base = fs::temp_directory_path() / fmt("queuerl_acceptance_%d", static_cast<int>(::getpid()));
  std::vector<std::map<std::string, std::string>> runs;
  for (const char* name : {"a", "b"}) {
    RunConfig rc;
    rc.function = Function::kTrain;
    rc.config_file = testing::repo_path("configs/eleven_node_network.yml");
    rc.param_file = testing::repo_path("configs/acceptance/reproducibility.yml");
    rc.data_file = base / name / "csv";
    rc.image_file = base / name / "plots";
    rc.plot_curves = true;
    std::ostringstream out, err;
    if (run(rc, out, err) != kExitOk) {
      fs::remove_all(base);
      return {false, "train run failed: " + err.str()};
    }
    runs.push_back(csv_files(base / name));
  }
  fs::remove_all(base);
  std::size_t bytes = 0;
  for (const auto& [name, content] : runs[0]) bytes += content.size();
  const bool same = runs[0] == runs[1] && !runs[0].empty();
  return {same, fmt("%zu CSV files, %zu bytes, %s", runs[0].size(), bytes, same ? "byte-identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("criteria", selected, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"M/M/1 sojourn time", mm1_sojourn},
      {"reward oracle", reward_oracle},
      {"gradient check", gradient_check},
      {"three-way routing", three_way_routing},
      {"blockage adaptation", blockage_adaptation},
      {"robustness arithmetic", robustness_arithmetic},
      {"burn-in detector", burn_in_oracle},
      {"replay buffer", replay_buffer_exhaustive},
      {"noise evaluation", noise_evaluation},
      {"scaling smoke", scaling_smoke},
      {"reproducibility", reproducibility},
  };
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }
  int failed = 0;
  for (int i : selected) {
    const auto& [name, check] = criteria[static_cast<std::size_t>(i - 1)];
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %-22s %s  %s\n", i, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
