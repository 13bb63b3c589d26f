// blockland: adversarial-RL workbench CLI.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 numeric fault.
// Relative --out paths resolve against $BLOCKLAND_OUT_ROOT when it is set.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "blockland/analysis.hpp"
#include "blockland/errors.hpp"
#include "blockland/harness.hpp"
#include "blockland/io.hpp"
#include "blockland/manifest.hpp"
#include "blockland/ppo.hpp"

namespace fs = std::filesystem;
using namespace blockland;

namespace {

fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  if (p.is_relative()) {
    if (const char* root = std::getenv("BLOCKLAND_OUT_ROOT")) {
      return fs::path(root) / p;
    }
  }
  return p;
}

LevelSpec load_level_arg(const std::string& level_path) {
  if (level_path.empty()) return twosides();
  return load_level(level_path);
}

// Defaults < config file < explicit flags. Flags are applied by the caller
// through CLI11 after this resolves the file layer.
PPOConfig resolve_config(const std::string& config_path) {
  PPOConfig cfg;
  if (!config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("cannot parse config file " + config_path + ": " + e.what());
    }
    cfg = config_from_json(j, cfg);
  }
  return cfg;
}

struct PpoFlagBindings {
  CLI::Option* n_envs = nullptr;
  CLI::Option* rollout_len = nullptr;
  CLI::Option* total_steps = nullptr;
  CLI::Option* learning_rate = nullptr;
  CLI::Option* minibatch_size = nullptr;
  CLI::Option* epochs = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* gae_lambda = nullptr;
  CLI::Option* clip_range = nullptr;
  CLI::Option* ent_coef = nullptr;
  CLI::Option* vf_coef = nullptr;
  CLI::Option* max_grad_norm = nullptr;
  CLI::Option* checkpoint_every = nullptr;
  CLI::Option* env_threads = nullptr;
  PPOConfig flag_values;  // receives parsed flag values

  void add_to(CLI::App* cmd) {
    n_envs = cmd->add_option("--n-envs", flag_values.n_envs, "Parallel environments per rollout");
    rollout_len = cmd->add_option("--rollout-len", flag_values.rollout_len, "Steps per environment per rollout");
    total_steps = cmd->add_option("--total-steps", flag_values.total_steps, "Total environment steps");
    learning_rate = cmd->add_option("--learning-rate", flag_values.learning_rate, "Adam learning rate");
    minibatch_size = cmd->add_option("--minibatch-size", flag_values.minibatch_size, "Update minibatch size");
    epochs = cmd->add_option("--epochs", flag_values.epochs, "Update epochs per rollout");
    gamma = cmd->add_option("--gamma", flag_values.gamma, "Discount factor");
    gae_lambda = cmd->add_option("--gae-lambda", flag_values.gae_lambda, "GAE lambda");
    clip_range = cmd->add_option("--clip-range", flag_values.clip_range, "PPO clip range");
    ent_coef = cmd->add_option("--ent-coef", flag_values.ent_coef, "Entropy coefficient");
    vf_coef = cmd->add_option("--vf-coef", flag_values.vf_coef, "Value loss coefficient");
    max_grad_norm = cmd->add_option("--max-grad-norm", flag_values.max_grad_norm, "Global gradient norm clip");
    checkpoint_every = cmd->add_option("--checkpoint-every", flag_values.checkpoint_every,
                                       "Rollouts between checkpoints");
    env_threads = cmd->add_option("--env-threads", flag_values.env_threads,
                                  "Threads stepping envs (bitwise-identical to 1)");
  }

  PPOConfig apply(PPOConfig cfg) const {
    if (n_envs->count()) cfg.n_envs = flag_values.n_envs;
    if (rollout_len->count()) cfg.rollout_len = flag_values.rollout_len;
    if (total_steps->count()) cfg.total_steps = flag_values.total_steps;
    if (learning_rate->count()) cfg.learning_rate = flag_values.learning_rate;
    if (minibatch_size->count()) cfg.minibatch_size = flag_values.minibatch_size;
    if (epochs->count()) cfg.epochs = flag_values.epochs;
    if (gamma->count()) cfg.gamma = flag_values.gamma;
    if (gae_lambda->count()) cfg.gae_lambda = flag_values.gae_lambda;
    if (clip_range->count()) cfg.clip_range = flag_values.clip_range;
    if (ent_coef->count()) cfg.ent_coef = flag_values.ent_coef;
    if (vf_coef->count()) cfg.vf_coef = flag_values.vf_coef;
    if (max_grad_norm->count()) cfg.max_grad_norm = flag_values.max_grad_norm;
    if (checkpoint_every->count()) cfg.checkpoint_every = flag_values.checkpoint_every;
    if (env_threads->count()) cfg.env_threads = flag_values.env_threads;
    validate_config(cfg);
    return cfg;
  }
};

void dump_config_and_level(const PPOConfig& cfg, const LevelSpec& level) {
  nlohmann::json j{{"ppo", config_to_json(cfg)}, {"level", level_to_json(level)}};
  std::cout << j.dump(2) << "\n";
}

// Runs tasks on `jobs` threads; rethrows the first failure after all join.
void run_parallel(const std::vector<std::function<void()>>& tasks, int jobs) {
  if (jobs <= 1) {
    for (const auto& t : tasks) t();
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> faults(tasks.size());
  std::mutex next_mutex;
  size_t next = 0;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
      for (;;) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (next >= tasks.size()) return;
          i = next++;
        }
        try {
          tasks[i]();
        } catch (...) {
          faults[i] = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& f : faults) {
    if (f) std::rethrow_exception(f);
  }
}

std::vector<fs::path> scan_run_dirs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  std::vector<fs::path> finals;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "final.json")) {
      finals.push_back(entry.path() / "final.json");
    }
  }
  std::sort(finals.begin(), finals.end());
  if (finals.empty()) throw UsageError("no run directories with final.json under " + dir.string());
  return finals;
}

RunManifest base_manifest(const std::string& command, const LevelSpec& level) {
  RunManifest m;
  m.command = command;
  m.level = level_to_json(level);
  m.started_at = timestamp_utc();
  return m;
}

void cmd_evaluate(const std::string& victim, const std::string& opponent, const LevelSpec& level, int episodes,
                  std::uint64_t seed_base, const fs::path& out) {
  RunManifest manifest = base_manifest("evaluate", level);
  const AgentRef victim_ref = AgentRef::parse(victim);
  const AgentRef opponent_ref = AgentRef::parse(opponent);
  manifest.opponent_identity = opponent_ref.identity();
  manifest.seeds = {seed_base};
  manifest.extra = {{"victim", victim_ref.identity()}, {"episodes", episodes}};

  const PairingResult result = evaluate_pair(victim_ref, opponent_ref, level, episodes, seed_base);
  write_pairings_csv({result}, out / "pairings.csv");
  manifest.artifacts = {"pairings.csv"};
  manifest.finished_at = timestamp_utc();
  write_manifest(out, manifest);

  std::cout << result.victim_id << " vs " << result.opponent_id << ": mean " << format_double(result.summary.mean)
            << ", std " << format_double(result.summary.stddev) << ", min " << format_double(result.summary.min)
            << ", max " << format_double(result.summary.max) << " over " << episodes << " episodes\n";
}

void cmd_matrix(const fs::path& victims_dir, const fs::path& adversaries_dir, const LevelSpec& level, int episodes,
                std::uint64_t seed_base, const fs::path& out) {
  RunManifest manifest = base_manifest("matrix", level);
  const std::vector<fs::path> victims = scan_run_dirs(victims_dir);
  const std::vector<fs::path> adversaries = scan_run_dirs(adversaries_dir);
  manifest.seeds = {seed_base};
  manifest.extra = {{"victims", victims.size()}, {"adversaries", adversaries.size()}, {"episodes", episodes}};

  const TransferMatrix tm = build_transfer_matrix(victims, adversaries, level, episodes, seed_base);
  write_pairings_csv(tm.pairings, out / "pairings.csv");
  write_matrix_csv(tm, out / "matrix.csv");
  manifest.artifacts = {"pairings.csv", "matrix.csv"};
  manifest.finished_at = timestamp_utc();
  write_manifest(out, manifest);

  std::cout << "matrix: " << tm.victim_ids.size() << " victims x " << tm.opponent_ids.size() << " opponents -> "
            << (out / "matrix.csv").string() << "\n";
}

void cmd_weight_norms(const fs::path& run_dir, const fs::path& out) {
  const WeightNormSeries series = weight_norm_series(run_dir);
  RunManifest manifest;
  manifest.command = "weight-norms";
  manifest.started_at = timestamp_utc();
  manifest.extra = {{"run", run_dir.string()}, {"checkpoints", series.rows.size()}};
  write_weight_norm_csv(series, out / "weight_norms.csv");
  write_weight_norm_svg(series, out / "weight_norms.svg");
  manifest.artifacts = {"weight_norms.csv", "weight_norms.svg"};
  manifest.finished_at = timestamp_utc();
  write_manifest(out, manifest);
  std::cout << "weight norms over " << series.rows.size() << " checkpoints -> " << (out / "weight_norms.csv").string()
            << "\n";
}

void cmd_heatmap(const std::string& policy, const LevelSpec& level, int episodes, double cell_size,
                 std::uint64_t seed, const fs::path& out) {
  RunManifest manifest = base_manifest("heatmap", level);
  const AgentRef ref = AgentRef::parse(policy);
  const Heatmap map = visitation_heatmap(ref, level, episodes, cell_size, seed);
  write_heatmap_csv(map, out / "heatmap.csv");
  write_heatmap_svg(map, out / "heatmap.svg");
  manifest.seeds = {seed};
  manifest.opponent_identity = ref.identity();
  manifest.extra = {{"episodes", map.episodes},
                    {"steps_counted", map.steps_counted},
                    {"mean_distinct_cells_per_episode", map.mean_distinct_cells_per_episode},
                    {"distinct_cells_total", map.distinct_cells_total},
                    {"cell_size", map.cell_size}};
  manifest.artifacts = {"heatmap.csv", "heatmap.svg"};
  manifest.finished_at = timestamp_utc();
  write_manifest(out, manifest);
  std::cout << "heatmap " << ref.id << ": " << map.steps_counted << " steps, mean distinct cells/episode "
            << format_double(map.mean_distinct_cells_per_episode) << "\n";
}

void cmd_report(const fs::path& pairings_path, bool unsafe, const fs::path& out) {
  if (!unsafe && !manifest_covers(pairings_path)) {
    throw UsageError("no manifest covers " + pairings_path.string() +
                     " (results must be traceable to their inputs; pass --unsafe to override)");
  }
  const std::vector<PairingResult> pairings = read_pairings_csv(pairings_path);
  RunManifest manifest;
  manifest.command = "report";
  manifest.started_at = timestamp_utc();
  manifest.extra = {{"pairings", pairings_path.string()}, {"unsafe", unsafe}};
  return_report(pairings, out);
  manifest.artifacts = {"summary.csv", "violins.svg", "means.svg"};
  manifest.finished_at = timestamp_utc();
  write_manifest(out, manifest);
  std::cout << "report over " << pairings.size() << " pairings -> " << (out / "summary.csv").string() << "\n";
}

struct GridPreset {
  std::vector<std::uint64_t> victim_seeds;
  std::vector<std::uint64_t> adversary_seeds;
  long total_steps;
  int eval_episodes;
  int heatmap_episodes;
};

GridPreset grid_preset(const std::string& name) {
  if (name == "full") return GridPreset{{1, 2, 3, 4, 5}, {1, 2, 3}, 800000, 30, 100};
  if (name == "smoke") return GridPreset{{1, 2}, {1}, 200000, 10, 20};
  throw UsageError("unknown grid preset '" + name + "' (expected full or smoke)");
}

void cmd_grid(const std::string& preset_name, const LevelSpec& level, PPOConfig cfg, int jobs, const fs::path& out) {
  const GridPreset preset = grid_preset(preset_name);
  cfg.total_steps = preset.total_steps;
  validate_config(cfg);

  RunManifest manifest = base_manifest("grid", level);
  manifest.config = config_to_json(cfg);
  manifest.seeds = preset.victim_seeds;
  manifest.extra = {{"preset", preset_name}, {"adversary_seeds", preset.adversary_seeds}, {"jobs", jobs}};
  write_manifest(out, manifest);  // partial manifest while the grid runs

  struct Variant {
    std::string opponent_tag;
    std::string prefix;
    fs::path victims_dir;
    fs::path adversaries_dir;
    fs::path eval_dir;
    fs::path report_dir;
  };
  const std::vector<Variant> variants = {
      {"arand", "v", out / "victims", out / "adversaries", out / "eval", out / "reports" / "returns"},
      {"natural", "n", out / "natural" / "victims", out / "natural" / "adversaries", out / "natural" / "eval",
       out / "reports" / "returns_natural"},
  };

  // Phase 1: victim training runs (both variants), parallel over runs.
  {
    std::vector<std::function<void()>> tasks;
    for (const Variant& var : variants) {
      for (size_t i = 0; i < preset.victim_seeds.size(); ++i) {
        const std::uint64_t seed = preset.victim_seeds[i];
        char id[16];
        std::snprintf(id, sizeof(id), "%s%02d", var.prefix.c_str(), static_cast<int>(i) + 1);
        const fs::path run_dir = var.victims_dir / id;
        const std::string tag = var.opponent_tag;
        const std::string id_str(id);
        tasks.push_back([=]() {
          std::cout << "training victim " + id_str + " vs " + tag + "\n" << std::flush;
          train(level, AgentId::Robot, AgentRef::parse(tag), cfg, seed, run_dir);
        });
      }
    }
    run_parallel(tasks, jobs);
  }

  // Phase 2: adversary runs against every victim.
  {
    std::vector<std::function<void()>> tasks;
    for (const Variant& var : variants) {
      for (const fs::path& victim : scan_run_dirs(var.victims_dir)) {
        const std::string victim_id = victim.parent_path().filename().string();
        for (size_t a = 0; a < preset.adversary_seeds.size(); ++a) {
          const std::uint64_t seed = preset.adversary_seeds[a];
          char suffix[16];
          std::snprintf(suffix, sizeof(suffix), "a%02d", static_cast<int>(a) + 1);
          const fs::path run_dir = var.adversaries_dir / (victim_id + "-" + suffix);
          tasks.push_back([=]() {
            std::cout << "training adversary " + run_dir.filename().string() + "\n" << std::flush;
            train_one_adversary(victim, seed, cfg, level, run_dir);
          });
        }
      }
    }
    run_parallel(tasks, jobs);
  }

  // Phase 3: transfer matrices and reports.
  for (const Variant& var : variants) {
    cmd_matrix(var.victims_dir, var.adversaries_dir, level, preset.eval_episodes, kDefaultEvalSeedBase, var.eval_dir);
    cmd_report(var.eval_dir / "pairings.csv", false, var.report_dir);
    for (const fs::path& victim : scan_run_dirs(var.victims_dir)) {
      const std::string victim_id = victim.parent_path().filename().string();
      cmd_weight_norms(victim.parent_path(), out / "reports" / "weight_norms" / victim_id);
    }
  }
  cmd_heatmap("arand", level, preset.heatmap_episodes, 0.5, 7, out / "reports" / "heatmaps" / "arand");
  cmd_heatmap("natural", level, preset.heatmap_episodes, 0.5, 7, out / "reports" / "heatmaps" / "natural");

  manifest.finished_at = timestamp_utc();
  manifest.artifacts = {"eval/pairings.csv", "eval/matrix.csv", "natural/eval/pairings.csv",
                        "natural/eval/matrix.csv"};
  write_manifest(out, manifest);
  std::cout << "grid " << preset_name << " complete -> " << out.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blockland adversarial-RL workbench: train victims and observed adversaries,\n"
               "evaluate cross-play, and report the diagnostics."};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (defaults < file < flags)")->envname("BLOCKLAND_CONFIG");

  // train-victim
  auto* tv = app.add_subcommand("train-victim", "PPO-train the robot against a scripted human");
  std::uint64_t tv_seed = 1;
  std::string tv_opponent = "arand", tv_level, tv_out;
  bool tv_dump = false;
  tv->add_option("--seed", tv_seed, "Run seed")->required();
  tv->add_option("--opponent", tv_opponent, "Scripted human: arand or natural")
      ->check(CLI::IsMember({"arand", "natural"}));
  tv->add_option("--level", tv_level, "Level JSON (default: built-in twosides)");
  tv->add_option("--out", tv_out, "Run directory")->required();
  tv->add_flag("--dump-config", tv_dump, "Print the resolved config and exit");
  PpoFlagBindings tv_flags;
  tv_flags.add_to(tv);

  // train-adversary
  auto* ta = app.add_subcommand("train-adversary", "PPO-train the human to minimize a frozen victim's reward");
  std::uint64_t ta_seed = 1;
  std::string ta_victim, ta_level, ta_out;
  bool ta_dump = false;
  ta->add_option("--victim", ta_victim, "Victim checkpoint path")->required();
  ta->add_option("--seed", ta_seed, "Run seed")->required();
  ta->add_option("--level", ta_level, "Level JSON (default: built-in twosides)");
  ta->add_option("--out", ta_out, "Run directory")->required();
  ta->add_flag("--dump-config", ta_dump, "Print the resolved config and exit");
  PpoFlagBindings ta_flags;
  ta_flags.add_to(ta);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate a victim/opponent pairing");
  std::string ev_victim, ev_opponent, ev_level, ev_out;
  int ev_episodes = 30;
  std::uint64_t ev_seed_base = kDefaultEvalSeedBase;
  ev->add_option("--victim", ev_victim, "Victim: checkpoint path or scripted tag")->required();
  ev->add_option("--opponent", ev_opponent, "Opponent: checkpoint path, arand, or natural")->required();
  ev->add_option("--episodes", ev_episodes, "Evaluation episodes");
  ev->add_option("--seed-base", ev_seed_base, "First per-episode seed");
  ev->add_option("--level", ev_level, "Level JSON (default: built-in twosides)");
  ev->add_option("--out", ev_out, "Output directory")->required();

  // matrix
  auto* mx = app.add_subcommand("matrix", "Evaluate every victim against arand and every adversary");
  std::string mx_victims, mx_adversaries, mx_level, mx_out;
  int mx_episodes = 30;
  std::uint64_t mx_seed_base = kDefaultEvalSeedBase;
  mx->add_option("--victims-dir", mx_victims, "Directory of victim run dirs")->required();
  mx->add_option("--adversaries-dir", mx_adversaries, "Directory of adversary run dirs")->required();
  mx->add_option("--episodes", mx_episodes, "Episodes per pairing");
  mx->add_option("--seed-base", mx_seed_base, "First per-episode seed");
  mx->add_option("--level", mx_level, "Level JSON (default: built-in twosides)");
  mx->add_option("--out", mx_out, "Output directory")->required();

  // weight-norms
  auto* wn = app.add_subcommand("weight-norms", "Input-layer L1 norms over a run's checkpoint series");
  std::string wn_run, wn_out;
  wn->add_option("--run", wn_run, "Training run directory")->required();
  wn->add_option("--out", wn_out, "Output directory")->required();

  // heatmap
  auto* hm = app.add_subcommand("heatmap", "Visitation heatmap of a human-side policy vs a stationary robot");
  std::string hm_policy, hm_level, hm_out;
  int hm_episodes = 100;
  double hm_cell = 0.5;
  std::uint64_t hm_seed = 7;
  hm->add_option("--policy", hm_policy, "Human policy: arand, natural, or checkpoint path")->required();
  hm->add_option("--episodes", hm_episodes, "Episodes to simulate");
  hm->add_option("--cell-size", hm_cell, "Cell size in world units");
  hm->add_option("--seed", hm_seed, "Base seed");
  hm->add_option("--level", hm_level, "Level JSON (default: built-in twosides)");
  hm->add_option("--out", hm_out, "Output directory")->required();

  // report
  auto* rp = app.add_subcommand("report", "Distribution summaries and charts from a pairings.csv");
  std::string rp_pairings, rp_out;
  bool rp_unsafe = false;
  rp->add_option("--pairings", rp_pairings, "pairings.csv produced by evaluate or matrix")->required();
  rp->add_flag("--unsafe", rp_unsafe, "Accept inputs not covered by a manifest");
  rp->add_option("--out", rp_out, "Output directory")->required();

  // grid
  auto* gr = app.add_subcommand("grid", "Run the whole pipeline: victims, adversaries, matrices, reports");
  std::string gr_preset = "smoke", gr_level, gr_out;
  int gr_jobs = 1;
  bool gr_dump = false;
  gr->add_option("--preset", gr_preset, "full or smoke")->check(CLI::IsMember({"full", "smoke"}));
  gr->add_option("--jobs", gr_jobs, "Parallel worker threads for training runs");
  gr->add_option("--level", gr_level, "Level JSON (default: built-in twosides)");
  gr->add_option("--out", gr_out, "Output directory")->required();
  gr->add_flag("--dump-config", gr_dump, "Print the resolved config and exit");
  PpoFlagBindings gr_flags;
  gr_flags.add_to(gr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  try {
    if (tv->parsed()) {
      const PPOConfig cfg = tv_flags.apply(resolve_config(config_path));
      const LevelSpec level = load_level_arg(tv_level);
      if (tv_dump) {
        dump_config_and_level(cfg, level);
        return 0;
      }
      train(level, AgentId::Robot, AgentRef::parse(tv_opponent), cfg, tv_seed, resolve_out(tv_out));
      std::cout << "victim run complete -> " << resolve_out(tv_out).string() << "\n";
    } else if (ta->parsed()) {
      const PPOConfig cfg = ta_flags.apply(resolve_config(config_path));
      const LevelSpec level = load_level_arg(ta_level);
      if (ta_dump) {
        dump_config_and_level(cfg, level);
        return 0;
      }
      train_one_adversary(ta_victim, ta_seed, cfg, level, resolve_out(ta_out));
      std::cout << "adversary run complete -> " << resolve_out(ta_out).string() << "\n";
    } else if (ev->parsed()) {
      cmd_evaluate(ev_victim, ev_opponent, load_level_arg(ev_level), ev_episodes, ev_seed_base, resolve_out(ev_out));
    } else if (mx->parsed()) {
      cmd_matrix(mx_victims, mx_adversaries, load_level_arg(mx_level), mx_episodes, mx_seed_base,
                 resolve_out(mx_out));
    } else if (wn->parsed()) {
      cmd_weight_norms(wn_run, resolve_out(wn_out));
    } else if (hm->parsed()) {
      cmd_heatmap(hm_policy, load_level_arg(hm_level), hm_episodes, hm_cell, hm_seed, resolve_out(hm_out));
    } else if (rp->parsed()) {
      cmd_report(rp_pairings, rp_unsafe, resolve_out(rp_out));
    } else if (gr->parsed()) {
      const PPOConfig cfg = gr_flags.apply(resolve_config(config_path));
      const LevelSpec level = load_level_arg(gr_level);
      if (gr_dump) {
        dump_config_and_level(cfg, level);
        return 0;
      }
      cmd_grid(gr_preset, level, cfg, gr_jobs, resolve_out(gr_out));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric fault: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
