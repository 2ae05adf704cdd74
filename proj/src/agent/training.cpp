#include "queuerl/agent/training.hpp"

#include <numeric>

#include "queuerl/errors.hpp"

namespace queuerl {

double EpisodeTrace::average_reward() const {
  if (rewards.empty()) return 0.0;
  return std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(rewards.size());
}

std::uint64_t episode_seed(std::uint64_t seed, std::int64_t episode) {
  // splitmix64 of the pair
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(episode) + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Trainer::Trainer(DdpgAgent& agent, RlEnv& env, StartModeChooser chooser, StepObserver observer)
    : agent_(agent),
      env_(env),
      chooser_(std::move(chooser)),
      observer_(std::move(observer)),
      // Separate stream so that start-mode draws never perturb the agent's own.
      mode_rng_(episode_seed(agent.params().seed, -1)) {
  if (agent_.state_dim() != env_.state_dim() || agent_.action_dim() != env_.action_dim()) {
    throw DimensionMismatch("agent and environment dimensions disagree");
  }
}

void Trainer::run_episodes(int count) {
  for (int i = 0; i < count; ++i) run_episode(episodes_run());
}

void Trainer::run_episode(int episode) {
  const AgentParams& p = agent_.params();
  const auto batch_size = static_cast<std::size_t>(p.batch_size);
  EpisodeTrace ep;
  ep.mode = chooser_ ? chooser_(episode, mode_rng_) : StartMode::normal();
  StateVector state = env_.reset(episode_seed(p.seed, episode));
  if (ep.mode.blocked_node) env_.network().set_blockage(*ep.mode.blocked_node);

  for (int t = 0; t < p.num_timesteps; ++t) {
    const ActionVector action = agent_.explore_action(state, p.epsilon, agent_.rng());
    StateVector next_state = env_.get_next_state(action);
    const double reward = env_.get_reward();
    ep.rewards.push_back(reward);
    ep.transition_probas.push_back(env_.network().transition_map());
    if (observer_) observer_(episode, ep.mode, next_state, reward);
    agent_.remember(Experience{state, action, reward, next_state});

    if (agent_.buffer().size() >= batch_size) {
      const std::vector<Experience> batch = agent_.buffer().sample(batch_size, agent_.rng());
      const TransitionBatch tb = agent_.to_batch(batch);
      LossRecord losses;
      losses.critic_loss = agent_.update_critic_network(tb);
      losses.actor_loss = agent_.update_actor_network(tb);
      agent_.advance_target_schedule();
      std::tie(losses.next_state_loss, losses.reward_loss) = agent_.fit_model();
      agent_.plan(agent_.rng());
      trace_.losses.push_back(losses);
    }
    state = std::move(next_state);
  }
  trace_.episodes.push_back(std::move(ep));
}

TrainingTrace train(DdpgAgent& agent, RlEnv& env, const StartModeChooser& chooser, const StepObserver& observer) {
  Trainer trainer(agent, env, chooser, observer);
  trainer.run_episodes(agent.params().num_episodes);
  return trainer.take_trace();
}

}  // namespace queuerl
