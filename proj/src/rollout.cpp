#include "blockland/rollout.hpp"

#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "blockland/errors.hpp"

namespace blockland {

RolloutBuffer::RolloutBuffer(int n_envs_, int len_)
    : n_envs(n_envs_),
      len(len_),
      obs(kObsDim, n_envs_ * len_),
      actions(static_cast<size_t>(n_envs_ * len_), 0),
      log_probs(Vec::Zero(n_envs_ * len_)),
      values(Vec::Zero(n_envs_ * len_)),
      rewards(Vec::Zero(n_envs_ * len_)),
      end(static_cast<size_t>(n_envs_ * len_), EndKind::None),
      boundary_values(Vec::Zero(n_envs_ * len_)),
      advantages(Vec::Zero(n_envs_ * len_)),
      return_targets(Vec::Zero(n_envs_ * len_)) {}

EnvRunner make_runner(const LevelSpec& spec) {
  EnvRunner r;
  ResetResult res = reset(spec);
  r.state = res.state;
  r.obs_robot = res.obs_robot;
  r.obs_human = res.obs_human;
  r.episode_return_acc = 0.0;
  r.episode_len = 0;
  return r;
}

namespace {

// Steps one env for the whole rollout window, writing its contiguous slice.
void collect_env(int env_index, std::vector<EnvRunner>& runners, const LevelSpec& spec,
                 const ActorCriticParams& params, AgentId learner_side, Agent& opponent, RolloutBuffer& buffer,
                 Pcg32& learner_rng, Pcg32& opponent_rng, std::vector<double>& completed) {
  EnvRunner& run = runners[static_cast<size_t>(env_index)];
  for (int t = 0; t < buffer.len; ++t) {
    try {
      const Observation& learner_obs = learner_side == AgentId::Robot ? run.obs_robot : run.obs_human;
      const Observation& opponent_obs = learner_side == AgentId::Robot ? run.obs_human : run.obs_robot;

      const Vec logits = forward_actor(params, learner_obs);
      const auto [a, log_prob] = sample_action(logits, learner_rng);
      const double value = forward_critic(params, learner_obs);
      const Action learner_action = static_cast<Action>(a);
      const Action opponent_action = opponent.act(opponent_obs, opponent_rng);

      const Action a_robot = learner_side == AgentId::Robot ? learner_action : opponent_action;
      const Action a_human = learner_side == AgentId::Robot ? opponent_action : learner_action;
      auto [next_state, result] = step(run.state, spec, a_robot, a_human);

      const double reward = learner_side == AgentId::Robot ? result.reward_robot : -result.reward_robot;
      const int s = buffer.slot(env_index, t);
      buffer.obs.col(s) = learner_obs;
      buffer.actions[static_cast<size_t>(s)] = a;
      buffer.log_probs(s) = log_prob;
      buffer.values(s) = value;
      buffer.rewards(s) = reward;

      run.episode_return_acc += reward;
      run.episode_len += 1;

      if (result.terminated || result.truncated) {
        buffer.end[static_cast<size_t>(s)] = result.terminated ? EndKind::Terminated : EndKind::Truncated;
        if (result.truncated) {
          const Observation& terminal_obs = learner_side == AgentId::Robot ? result.obs_robot : result.obs_human;
          buffer.boundary_values(s) = forward_critic(params, terminal_obs);
        } else {
          buffer.boundary_values(s) = 0.0;
        }
        completed.push_back(run.episode_return_acc);
        run = make_runner(spec);
        opponent.begin_episode();
      } else {
        buffer.end[static_cast<size_t>(s)] = EndKind::None;
        buffer.boundary_values(s) = 0.0;
        run.state = next_state;
        run.obs_robot = result.obs_robot;
        run.obs_human = result.obs_human;
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("rollout fault at env " + std::to_string(env_index) + ", t " + std::to_string(t) +
                               ": " + e.what());
    }
  }
}

}  // namespace

std::vector<double> collect_rollout(std::vector<EnvRunner>& runners, const LevelSpec& spec,
                                    const ActorCriticParams& params, AgentId learner_side,
                                    const std::vector<std::unique_ptr<Agent>>& opponents, RolloutBuffer& buffer,
                                    std::vector<Pcg32>& learner_streams, std::vector<Pcg32>& opponent_streams,
                                    int env_threads) {
  const int n = buffer.n_envs;
  if (static_cast<int>(runners.size()) != n || static_cast<int>(opponents.size()) != n ||
      static_cast<int>(learner_streams.size()) != n || static_cast<int>(opponent_streams.size()) != n) {
    throw UsageError("collect_rollout: per-env containers must match buffer.n_envs");
  }

  std::vector<std::vector<double>> completed(static_cast<size_t>(n));

  if (env_threads <= 1) {
    for (int i = 0; i < n; ++i) {
      collect_env(i, runners, spec, params, learner_side, *opponents[static_cast<size_t>(i)], buffer,
                  learner_streams[static_cast<size_t>(i)], opponent_streams[static_cast<size_t>(i)],
                  completed[static_cast<size_t>(i)]);
    }
  } else {
    // Each worker owns disjoint env indices: disjoint buffer slices,
    // disjoint rng streams, shared read-only params.
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> faults(static_cast<size_t>(n));
    for (int w = 0; w < env_threads; ++w) {
      workers.emplace_back([&, w]() {
        for (int i = w; i < n; i += env_threads) {
          try {
            collect_env(i, runners, spec, params, learner_side, *opponents[static_cast<size_t>(i)], buffer,
                        learner_streams[static_cast<size_t>(i)], opponent_streams[static_cast<size_t>(i)],
                        completed[static_cast<size_t>(i)]);
          } catch (...) {
            faults[static_cast<size_t>(i)] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& f : faults) {
      if (f) std::rethrow_exception(f);
    }
  }

  std::vector<double> all;
  for (const auto& c : completed) all.insert(all.end(), c.begin(), c.end());
  return all;
}

Vec bootstrap_values(const std::vector<EnvRunner>& runners, const ActorCriticParams& params, AgentId learner_side) {
  Vec v(static_cast<Eigen::Index>(runners.size()));
  for (size_t i = 0; i < runners.size(); ++i) {
    const Observation& obs = learner_side == AgentId::Robot ? runners[i].obs_robot : runners[i].obs_human;
    v(static_cast<Eigen::Index>(i)) = forward_critic(params, obs);
  }
  return v;
}

void compute_gae(RolloutBuffer& buffer, const Vec& bootstrap, double gamma, double gae_lambda) {
  if (bootstrap.size() != buffer.n_envs) throw UsageError("compute_gae: bootstrap size must equal n_envs");

  for (int env = 0; env < buffer.n_envs; ++env) {
    double next_value = bootstrap(env);
    double next_advantage = 0.0;
    for (int t = buffer.len - 1; t >= 0; --t) {
      const int s = buffer.slot(env, t);
      const EndKind kind = buffer.end[static_cast<size_t>(s)];
      if (kind == EndKind::Terminated) {
        next_value = 0.0;
        next_advantage = 0.0;
      } else if (kind == EndKind::Truncated) {
        next_value = buffer.boundary_values(s);
        next_advantage = 0.0;
      }
      const double delta = buffer.rewards(s) + gamma * next_value - buffer.values(s);
      const double adv = delta + gamma * gae_lambda * next_advantage;
      buffer.advantages(s) = adv;
      buffer.return_targets(s) = adv + buffer.values(s);
      next_value = buffer.values(s);
      next_advantage = adv;
    }
  }
}

}  // namespace blockland
