#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "blockland/ppo.hpp"

namespace blockland {

// Seed and scale settings for one end-to-end experiment grid. The presets
// pin the seeds used by the shipped results.
struct GridPreset {
  std::string name;
  std::vector<std::uint64_t> victim_seeds;
  std::vector<std::uint64_t> adversary_seeds;
  long total_steps = 0;
  int eval_episodes = 0;
  int heatmap_episodes = 0;
};

GridPreset grid_preset(const std::string& name);  // "full" or "smoke"

struct GridPaths {
  std::filesystem::path out;
  std::filesystem::path victims_dir;            // arand-trained victims v01..
  std::filesystem::path adversaries_dir;        // v0x-a0y
  std::filesystem::path eval_dir;               // pairings.csv + matrix.csv
  std::filesystem::path natural_victims_dir;    // natural-walk-trained n01..
  std::filesystem::path natural_adversaries_dir;
  std::filesystem::path natural_eval_dir;
  std::filesystem::path reports_dir;
};

GridPaths grid_paths(const std::filesystem::path& out);

// Trains every victim (arand and natural variants), all adversaries, and
// evaluates both transfer matrices; reports (weight norms, heatmaps,
// return summaries) go under reports/. `jobs` parallelizes independent
// training runs. Everything is reproducible from the preset seeds.
GridPaths run_grid(const GridPreset& preset, const LevelSpec& level, PPOConfig cfg, int jobs,
                   const std::filesystem::path& out);

}  // namespace blockland
