#include "blockland/ppo.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "blockland/errors.hpp"
#include "blockland/io.hpp"
#include "blockland/manifest.hpp"

namespace blockland {

void validate_config(const PPOConfig& cfg) {
  auto fail = [](const std::string& why) { throw ConfigError("invalid PPO config: " + why); };
  if (cfg.n_envs <= 0 || cfg.rollout_len <= 0) fail("n_envs and rollout_len must be positive");
  if (cfg.total_steps <= 0) fail("total_steps must be positive");
  if (cfg.minibatch_size <= 0) fail("minibatch_size must be positive");
  if ((cfg.n_envs * cfg.rollout_len) % cfg.minibatch_size != 0) {
    fail("n_envs * rollout_len must be divisible by minibatch_size");
  }
  if (cfg.epochs <= 0) fail("epochs must be positive");
  if (!(cfg.learning_rate > 0.0)) fail("learning_rate must be positive");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) fail("gamma must be in (0, 1]");
  if (!(cfg.gae_lambda > 0.0 && cfg.gae_lambda <= 1.0)) fail("gae_lambda must be in (0, 1]");
  if (!(cfg.clip_range > 0.0)) fail("clip_range must be positive");
  if (cfg.ent_coef < 0.0 || cfg.vf_coef < 0.0) fail("loss coefficients must be non-negative");
  if (!(cfg.max_grad_norm > 0.0)) fail("max_grad_norm must be positive");
  if (cfg.checkpoint_every <= 0) fail("checkpoint_every must be positive");
  if (cfg.env_threads <= 0) fail("env_threads must be positive");
}

nlohmann::json config_to_json(const PPOConfig& cfg) {
  return nlohmann::json{
      {"n_envs", cfg.n_envs},
      {"rollout_len", cfg.rollout_len},
      {"total_steps", cfg.total_steps},
      {"learning_rate", cfg.learning_rate},
      {"minibatch_size", cfg.minibatch_size},
      {"epochs", cfg.epochs},
      {"gamma", cfg.gamma},
      {"gae_lambda", cfg.gae_lambda},
      {"clip_range", cfg.clip_range},
      {"ent_coef", cfg.ent_coef},
      {"vf_coef", cfg.vf_coef},
      {"max_grad_norm", cfg.max_grad_norm},
      {"checkpoint_every", cfg.checkpoint_every},
      {"env_threads", cfg.env_threads},
  };
}

PPOConfig config_from_json(const nlohmann::json& j, const PPOConfig& base) {
  PPOConfig cfg = base;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n_envs") cfg.n_envs = value.get<int>();
      else if (key == "rollout_len") cfg.rollout_len = value.get<int>();
      else if (key == "total_steps") cfg.total_steps = value.get<long>();
      else if (key == "learning_rate") cfg.learning_rate = value.get<double>();
      else if (key == "minibatch_size") cfg.minibatch_size = value.get<int>();
      else if (key == "epochs") cfg.epochs = value.get<int>();
      else if (key == "gamma") cfg.gamma = value.get<double>();
      else if (key == "gae_lambda") cfg.gae_lambda = value.get<double>();
      else if (key == "clip_range") cfg.clip_range = value.get<double>();
      else if (key == "ent_coef") cfg.ent_coef = value.get<double>();
      else if (key == "vf_coef") cfg.vf_coef = value.get<double>();
      else if (key == "max_grad_norm") cfg.max_grad_norm = value.get<double>();
      else if (key == "checkpoint_every") cfg.checkpoint_every = value.get<int>();
      else if (key == "env_threads") cfg.env_threads = value.get<int>();
      else throw ConfigError("unknown config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("bad config value for '" + key + "': " + e.what());
    }
  }
  validate_config(cfg);
  return cfg;
}

UpdateStats ppo_update(ActorCriticParams& params, const RolloutBuffer& buffer, AdamState& adam, const PPOConfig& cfg,
                       Pcg32& shuffle_rng) {
  const int n = buffer.capacity();
  const int mb = cfg.minibatch_size;
  const int n_minibatches = n / mb;
  const PpoLossSpec loss_spec{cfg.clip_range, cfg.vf_coef, cfg.ent_coef};

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  Minibatch batch;
  batch.obs.resize(kObsDim, mb);
  batch.actions.resize(static_cast<size_t>(mb));
  batch.old_log_probs.resize(mb);
  batch.advantages.resize(mb);
  batch.return_targets.resize(mb);

  UpdateStats stats;
  int stat_count = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates; every sample visited exactly once per epoch.
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(shuffle_rng.uniform_int(static_cast<std::uint32_t>(i + 1)));
      std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
    }

    for (int m = 0; m < n_minibatches; ++m) {
      for (int k = 0; k < mb; ++k) {
        const int s = order[static_cast<size_t>(m * mb + k)];
        batch.obs.col(k) = buffer.obs.col(s);
        batch.actions[static_cast<size_t>(k)] = buffer.actions[static_cast<size_t>(s)];
        batch.old_log_probs(k) = buffer.log_probs(s);
        batch.advantages(k) = buffer.advantages(s);
        batch.return_targets(k) = buffer.return_targets(s);
      }

      // Per-minibatch normalization, sample std (ddof=1).
      const double mean = batch.advantages.mean();
      const double var = (batch.advantages.array() - mean).square().sum() / static_cast<double>(mb - 1);
      batch.advantages = (batch.advantages.array() - mean) / (std::sqrt(var) + 1e-8);

      try {
        auto [loss, grads] = ppo_loss_backward(params, batch, loss_spec);
        grads = clip_global_norm(std::move(grads), cfg.max_grad_norm);
        adam_update(params, grads, adam, cfg.learning_rate);

        stats.policy_loss += loss.policy;
        stats.value_loss += loss.value;
        stats.entropy += loss.entropy;
        stats.clip_fraction += loss.clip_fraction;
        stats.approx_kl += loss.approx_kl;
        stat_count += 1;
      } catch (const NumericError& e) {
        throw NumericError("update aborted at epoch " + std::to_string(epoch) + ", minibatch " + std::to_string(m) +
                           ": " + e.what());
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(stat_count);
  stats.policy_loss *= inv;
  stats.value_loss *= inv;
  stats.entropy *= inv;
  stats.clip_fraction *= inv;
  stats.approx_kl *= inv;
  return stats;
}

TrainResult train(const LevelSpec& level, AgentId learner_side, const AgentRef& opponent, const PPOConfig& cfg,
                  std::uint64_t seed, const std::filesystem::path& run_dir) {
  validate_config(cfg);
  validate_level(level);

  std::filesystem::create_directories(run_dir / "checkpoints");

  RunManifest manifest;
  manifest.command = "train";
  manifest.config = config_to_json(cfg);
  manifest.level = level_to_json(level);
  manifest.seeds = {seed};
  manifest.opponent_identity = opponent.identity();
  manifest.extra = nlohmann::json{{"learner_side", learner_side == AgentId::Robot ? "robot" : "human"},
                                  {"opponent_selector", opponent.selector}};
  manifest.started_at = timestamp_utc();
  // Partial manifest first: a crashed run still records what it was.
  write_manifest(run_dir, manifest);

  write_file(run_dir / "config.json", config_to_json(cfg).dump(2) + "\n");

  ActorCriticParams params = init_params(seed);
  AdamState adam = init_adam(params);

  CheckpointMeta meta;
  meta.seed = seed;
  meta.opponent_tag = opponent.identity();
  meta.role = learner_side == AgentId::Robot ? "robot" : "human";

  std::vector<EnvRunner> runners;
  std::vector<std::unique_ptr<Agent>> opponents;
  std::vector<Pcg32> learner_streams;
  std::vector<Pcg32> opponent_streams;
  for (int i = 0; i < cfg.n_envs; ++i) {
    runners.push_back(make_runner(level));
    opponents.push_back(opponent.make_agent());
    opponents.back()->begin_episode();
    learner_streams.push_back(make_stream(seed, stream_id::kLearnerEnvBase + static_cast<std::uint64_t>(i)));
    opponent_streams.push_back(make_stream(seed, stream_id::kOpponentEnvBase + static_cast<std::uint64_t>(i)));
  }
  Pcg32 shuffle_rng = make_stream(seed, stream_id::kShuffle);

  RolloutBuffer buffer(cfg.n_envs, cfg.rollout_len);
  const long steps_per_rollout = static_cast<long>(cfg.n_envs) * cfg.rollout_len;
  const int n_rollouts = static_cast<int>((cfg.total_steps + steps_per_rollout - 1) / steps_per_rollout);

  auto checkpoint_name = [](int rollout) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ckpt_%04d.json", rollout);
    return std::string(buf);
  };

  std::vector<std::string> artifacts = {"config.json", "training_log.csv", "final.json"};

  meta.trained_env_steps = 0;
  save_checkpoint(run_dir / "checkpoints" / checkpoint_name(0), params, meta);
  artifacts.push_back("checkpoints/" + checkpoint_name(0));

  std::ostringstream log;
  log << "rollout,env_steps,mean_episode_return,policy_loss,value_loss,entropy,clip_fraction,kl\n";

  for (int rollout = 1; rollout <= n_rollouts; ++rollout) {
    const std::vector<double> episode_returns = collect_rollout(
        runners, level, params, learner_side, opponents, buffer, learner_streams, opponent_streams, cfg.env_threads);
    const Vec bootstrap = bootstrap_values(runners, params, learner_side);
    compute_gae(buffer, bootstrap, cfg.gamma, cfg.gae_lambda);
    const UpdateStats stats = ppo_update(params, buffer, adam, cfg, shuffle_rng);

    const double mean_return =
        episode_returns.empty()
            ? std::numeric_limits<double>::quiet_NaN()
            : std::accumulate(episode_returns.begin(), episode_returns.end(), 0.0) / episode_returns.size();

    meta.trained_env_steps = static_cast<long>(rollout) * steps_per_rollout;
    log << rollout << ',' << meta.trained_env_steps << ',' << format_double(mean_return) << ','
        << format_double(stats.policy_loss) << ',' << format_double(stats.value_loss) << ','
        << format_double(stats.entropy) << ',' << format_double(stats.clip_fraction) << ','
        << format_double(stats.approx_kl) << '\n';

    if (rollout % cfg.checkpoint_every == 0 && rollout != n_rollouts) {
      save_checkpoint(run_dir / "checkpoints" / checkpoint_name(rollout), params, meta);
      artifacts.push_back("checkpoints/" + checkpoint_name(rollout));
    }
  }

  save_checkpoint(run_dir / "final.json", params, meta, &adam);
  write_file(run_dir / "training_log.csv", log.str());

  manifest.finished_at = timestamp_utc();
  manifest.artifacts = artifacts;
  write_manifest(run_dir, manifest);

  TrainResult result;
  result.final_checkpoint = run_dir / "final.json";
  result.rollouts = n_rollouts;
  result.env_steps = static_cast<long>(n_rollouts) * steps_per_rollout;
  return result;
}

}  // namespace blockland
