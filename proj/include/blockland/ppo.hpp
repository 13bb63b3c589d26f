#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "blockland/adam.hpp"
#include "blockland/agents.hpp"
#include "blockland/loss.hpp"
#include "blockland/rollout.hpp"

namespace blockland {

struct PPOConfig {
  int n_envs = 8;
  int rollout_len = 512;
  long total_steps = 800000;
  double learning_rate = 0.001;
  int minibatch_size = 64;
  int epochs = 10;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_range = 0.2;
  double ent_coef = 0.01;
  double vf_coef = 0.5;
  double max_grad_norm = 0.5;
  int checkpoint_every = 8;  // rollouts between checkpoints
  int env_threads = 1;       // envs stepped per rollout in parallel; bitwise-identical to 1
};

void validate_config(const PPOConfig& cfg);
nlohmann::json config_to_json(const PPOConfig& cfg);
// Unknown keys rejected; missing keys keep their defaults.
PPOConfig config_from_json(const nlohmann::json& j, const PPOConfig& base = PPOConfig{});

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;
};

// One PPO update over a full buffer: `epochs` passes, each a fresh shuffle
// swept in minibatches; per minibatch the advantages are normalized
// (mean 0, sample std 1), the clipped-surrogate gradient is taken, clipped
// at the global norm, and applied with Adam. Stats are means over all
// minibatches. Throws NumericError naming the minibatch on non-finite loss.
UpdateStats ppo_update(ActorCriticParams& params, const RolloutBuffer& buffer, AdamState& adam, const PPOConfig& cfg,
                       Pcg32& shuffle_rng);

struct TrainResult {
  std::filesystem::path final_checkpoint;
  int rollouts = 0;
  long env_steps = 0;
};

// Full training run: collect -> GAE -> update until total_steps env steps
// are reached or exceeded. Writes run_dir/{manifest.json, config.json,
// checkpoints/ckpt_NNNN.json, final.json, training_log.csv}. The initial
// parameters (rollout 0) are checkpointed too. Deterministic given
// (level, opponent, config, seed): rerunning reproduces every artifact
// byte-identically except the manifest timestamps.
TrainResult train(const LevelSpec& level, AgentId learner_side, const AgentRef& opponent, const PPOConfig& cfg,
                  std::uint64_t seed, const std::filesystem::path& run_dir);

}  // namespace blockland
