#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "blockland/agents.hpp"
#include "blockland/env.hpp"
#include "blockland/net.hpp"

namespace blockland {

enum class EndKind : std::uint8_t { None = 0, Terminated = 1, Truncated = 2 };

// Fixed-capacity on-policy store, slot = env * len + t (env-major, so one
// env's stream is a contiguous range and parallel workers write disjoint
// slices).
struct RolloutBuffer {
  int n_envs = 0;
  int len = 0;

  Mat obs;                       // kObsDim x (n_envs * len)
  std::vector<int> actions;      // learner actions
  Vec log_probs;                 // learner log pi(a|s) at collection time
  Vec values;                    // critic V(s) at collection time
  Vec rewards;                   // learner-side reward
  std::vector<EndKind> end;      // episode boundary kind at this slot
  Vec boundary_values;           // V(terminal obs) for truncated slots, else 0
  Vec advantages;                // filled by compute_gae
  Vec return_targets;            // advantage + value

  RolloutBuffer(int n_envs, int len);
  int capacity() const { return n_envs * len; }
  int slot(int env, int t) const { return env * len + t; }
};

// One live environment stream with auto-reset.
struct EnvRunner {
  EnvState state;
  Observation obs_robot;
  Observation obs_human;
  double episode_return_acc = 0.0;  // learner-side return of the running episode
  int episode_len = 0;
};

EnvRunner make_runner(const LevelSpec& spec);

// Fills the buffer with n_envs x len transitions. The learner samples from
// its categorical policy; the opponent acts through its Agent. Each env
// consumes only its own two streams, so stepping envs on threads replays
// bitwise identical to sequential stepping.
//
// learner_side selects which agent the policy controls; rewards are stored
// from the learner's perspective (robot reward negated when the learner is
// the human, making adversary training strictly zero-sum).
//
// Returns the learner-side returns of episodes completed during this
// rollout (env-major order).
std::vector<double> collect_rollout(std::vector<EnvRunner>& runners, const LevelSpec& spec,
                                    const ActorCriticParams& params, AgentId learner_side,
                                    const std::vector<std::unique_ptr<Agent>>& opponents, RolloutBuffer& buffer,
                                    std::vector<Pcg32>& learner_streams, std::vector<Pcg32>& opponent_streams,
                                    int env_threads = 1);

// Critic value of each env's current (post-rollout) observation.
Vec bootstrap_values(const std::vector<EnvRunner>& runners, const ActorCriticParams& params, AgentId learner_side);

// Reverse GAE recursion per env stream. Termination bootstraps zero;
// truncation bootstraps the stored critic value of the terminal
// observation; the advantage recursion cuts at every episode boundary.
// return_target = advantage + value.
void compute_gae(RolloutBuffer& buffer, const Vec& bootstrap, double gamma, double gae_lambda);

}  // namespace blockland
