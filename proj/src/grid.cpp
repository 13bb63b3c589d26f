#include "blockland/grid.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "blockland/analysis.hpp"
#include "blockland/errors.hpp"
#include "blockland/harness.hpp"
#include "blockland/io.hpp"
#include "blockland/manifest.hpp"

namespace blockland {

namespace fs = std::filesystem;

GridPreset grid_preset(const std::string& name) {
  if (name == "full") return GridPreset{"full", {1, 2, 3, 4, 5}, {1, 2, 3}, 800000, 30, 100};
  if (name == "smoke") return GridPreset{"smoke", {1, 2}, {1}, 200000, 10, 20};
  throw UsageError("unknown grid preset '" + name + "' (expected full or smoke)");
}

GridPaths grid_paths(const fs::path& out) {
  GridPaths p;
  p.out = out;
  p.victims_dir = out / "victims";
  p.adversaries_dir = out / "adversaries";
  p.eval_dir = out / "eval";
  p.natural_victims_dir = out / "natural" / "victims";
  p.natural_adversaries_dir = out / "natural" / "adversaries";
  p.natural_eval_dir = out / "natural" / "eval";
  p.reports_dir = out / "reports";
  return p;
}

namespace {

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

std::vector<fs::path> scan_runs(const fs::path& dir) {
  std::vector<fs::path> finals;
  if (!fs::is_directory(dir)) return finals;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "final.json")) {
      finals.push_back(entry.path() / "final.json");
    }
  }
  std::sort(finals.begin(), finals.end());
  return finals;
}

void evaluate_variant(const fs::path& victims_dir, const fs::path& adversaries_dir, const fs::path& eval_dir,
                      const LevelSpec& level, int episodes) {
  RunManifest manifest;
  manifest.command = "matrix";
  manifest.level = level_to_json(level);
  manifest.seeds = {kDefaultEvalSeedBase};
  manifest.started_at = timestamp_utc();

  const TransferMatrix tm =
      build_transfer_matrix(scan_runs(victims_dir), scan_runs(adversaries_dir), level, episodes);
  write_pairings_csv(tm.pairings, eval_dir / "pairings.csv");
  write_matrix_csv(tm, eval_dir / "matrix.csv");

  manifest.artifacts = {"pairings.csv", "matrix.csv"};
  manifest.finished_at = timestamp_utc();
  write_manifest(eval_dir, manifest);
}

}  // namespace

GridPaths run_grid(const GridPreset& preset, const LevelSpec& level, PPOConfig cfg, int jobs, const fs::path& out) {
  cfg.total_steps = preset.total_steps;
  validate_config(cfg);
  validate_level(level);

  const GridPaths paths = grid_paths(out);

  RunManifest manifest;
  manifest.command = "grid";
  manifest.config = config_to_json(cfg);
  manifest.level = level_to_json(level);
  manifest.seeds = preset.victim_seeds;
  manifest.extra = {{"preset", preset.name}, {"adversary_seeds", preset.adversary_seeds}, {"jobs", jobs}};
  manifest.started_at = timestamp_utc();
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
      {"arand", "v", paths.victims_dir, paths.adversaries_dir, paths.eval_dir, paths.reports_dir / "returns"},
      {"natural", "n", paths.natural_victims_dir, paths.natural_adversaries_dir, paths.natural_eval_dir,
       paths.reports_dir / "returns_natural"},
  };

  // Phase 1: victim training runs.
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
      for (const fs::path& victim : scan_runs(var.victims_dir)) {
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
    evaluate_variant(var.victims_dir, var.adversaries_dir, var.eval_dir, level, preset.eval_episodes);
    return_report(read_pairings_csv(var.eval_dir / "pairings.csv"), var.report_dir);
    for (const fs::path& victim : scan_runs(var.victims_dir)) {
      const std::string victim_id = victim.parent_path().filename().string();
      const WeightNormSeries series = weight_norm_series(victim.parent_path());
      write_weight_norm_csv(series, paths.reports_dir / "weight_norms" / victim_id / "weight_norms.csv");
      write_weight_norm_svg(series, paths.reports_dir / "weight_norms" / victim_id / "weight_norms.svg");
    }
  }
  for (const char* tag : {"arand", "natural"}) {
    const Heatmap map = visitation_heatmap(AgentRef::parse(tag), level, preset.heatmap_episodes, 0.5, 7);
    write_heatmap_csv(map, paths.reports_dir / "heatmaps" / tag / "heatmap.csv");
    write_heatmap_svg(map, paths.reports_dir / "heatmaps" / tag / "heatmap.svg");
  }

  manifest.finished_at = timestamp_utc();
  manifest.artifacts = {"eval/pairings.csv", "eval/matrix.csv", "natural/eval/pairings.csv",
                        "natural/eval/matrix.csv"};
  write_manifest(out, manifest);
  return paths;
}

}  // namespace blockland
