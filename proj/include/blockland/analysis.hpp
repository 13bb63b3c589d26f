#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "blockland/agents.hpp"
#include "blockland/harness.hpp"
#include "blockland/net.hpp"

namespace blockland {

// Observation dimensions grouped by meaning; block j sums the per-column
// L1 norms of its member dimensions.
constexpr int kNumObsBlocks = 5;
constexpr std::array<const char*, kNumObsBlocks> kObsBlockNames = {"self_pos", "other_pos", "box_pos", "cart_pos",
                                                                   "held_flags"};
constexpr std::array<std::pair<int, int>, kNumObsBlocks> kObsBlockRanges = {
    std::pair<int, int>{0, 2}, {2, 4}, {4, 8}, {8, 10}, {10, 12}};  // [begin, end)

// L1 norm of each input-layer column (sum of |W1[i][j]| over rows), per
// network, plus the block sums.
struct InputWeightNorms {
  Vec actor_per_dim;    // 12
  Vec critic_per_dim;   // 12
  std::array<double, kNumObsBlocks> actor_blocks;
  std::array<double, kNumObsBlocks> critic_blocks;
};

InputWeightNorms input_weight_l1(const ActorCriticParams& params);

struct WeightNormSeries {
  std::vector<long> env_steps;          // ascending
  std::vector<InputWeightNorms> rows;   // one per checkpoint
};

// Scans run_dir/checkpoints/ckpt_*.json plus run_dir/final.json, ordered by
// trained_env_steps. Unreadable checkpoints are skipped with a warning.
WeightNormSeries weight_norm_series(const std::filesystem::path& run_dir);

void write_weight_norm_csv(const WeightNormSeries& series, const std::filesystem::path& path);
// Two panels (actor, critic), one line per block.
void write_weight_norm_svg(const WeightNormSeries& series, const std::filesystem::path& path);

// Visit counts over the human side of the road, cell_size x cell_size
// world-unit cells.
struct Heatmap {
  int nx = 0;
  int ny = 0;
  double cell_size = 0.5;
  Eigen::MatrixXd counts;  // nx x ny
  long episodes = 0;
  long steps_counted = 0;             // == sum of counts
  double mean_distinct_cells_per_episode = 0.0;
  long distinct_cells_total = 0;      // union over all episodes
};

// Runs the policy on the human side against a stationary robot (NoOp), so
// the human's motion pattern is isolated; counts the human's cell each step.
Heatmap visitation_heatmap(const AgentRef& policy, const LevelSpec& level, int episodes, double cell_size,
                           std::uint64_t seed);

void write_heatmap_csv(const Heatmap& map, const std::filesystem::path& path);
void write_heatmap_svg(const Heatmap& map, const std::filesystem::path& path);

// Gaussian KDE with Silverman's rule-of-thumb bandwidth
// (0.9 * min(stddev, IQR/1.34) * n^(-1/5)).
double silverman_bandwidth(const std::vector<double>& xs);
std::vector<double> gaussian_kde(const std::vector<double>& xs, const std::vector<double>& eval_points,
                                 double bandwidth);

// Per-pairing distribution summaries plus charts from a pairings.csv:
//   summary.csv  - mean/std/min/max/quartiles and the percentage decrease
//                  from the victim's arand baseline
//   violins.svg  - per-pairing return distribution (KDE violin; a bar when
//                  the distribution is degenerate)
//   means.svg    - grouped bars of mean return per victim x opponent
struct ReturnReportRow {
  std::string victim_id;
  std::string opponent_id;
  int episodes = 0;
  Summary summary;
  double pct_decrease_vs_baseline = 0.0;  // 0 for the baseline itself
};

std::vector<ReturnReportRow> return_report(const std::vector<PairingResult>& pairings,
                                           const std::filesystem::path& out_dir);

}  // namespace blockland
