#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "blockland/agents.hpp"
#include "blockland/ppo.hpp"
#include "blockland/stats.hpp"

namespace blockland {

constexpr std::uint64_t kDefaultEvalSeedBase = 1000;  // disjoint from training seeds

struct PairingResult {
  std::string victim_id;
  std::string opponent_id;
  std::vector<double> returns;  // robot's return per episode
  Summary summary;
  bool direct_pair = false;  // opponent was trained against this victim
};

// Runs `episodes` episodes with per-episode seeds seed_base..seed_base+n-1;
// the victim plays the robot, the opponent the human, both sampling
// stochastically. Deterministic given the seeds.
PairingResult evaluate_pair(const AgentRef& victim, const AgentRef& opponent, const LevelSpec& level,
                            int episodes = 30, std::uint64_t seed_base = kDefaultEvalSeedBase);

// One PPO run per seed with the scripted human opponent; the robot learns.
// Run directories are named <prefix>01, <prefix>02, ... under out_dir.
// A failed run is reported and skipped; the others proceed.
std::vector<std::filesystem::path> train_victims(const LevelSpec& level, const std::string& opponent_tag,
                                                 const std::vector<std::uint64_t>& seeds, const PPOConfig& cfg,
                                                 const std::filesystem::path& out_dir,
                                                 const std::string& id_prefix = "v");

// The human learns against the frozen victim; its reward is the exact
// negation of the robot's (strict zero-sum). Run directories are named
// <victim_id>-a01, ... and their manifests record the victim's digest.
std::vector<std::filesystem::path> train_adversaries(const std::filesystem::path& victim_checkpoint,
                                                     const std::vector<std::uint64_t>& seeds, const PPOConfig& cfg,
                                                     const LevelSpec& level, const std::filesystem::path& out_dir);

// One adversary run into an explicit run directory; the manifest records
// the training victim. Returns the final checkpoint path.
std::filesystem::path train_one_adversary(const std::filesystem::path& victim_checkpoint, std::uint64_t seed,
                                          const PPOConfig& cfg, const LevelSpec& level,
                                          const std::filesystem::path& run_dir);

struct TransferMatrix {
  std::vector<std::string> victim_ids;
  std::vector<std::string> opponent_ids;              // arand first, then adversaries
  Eigen::MatrixXd means;                              // NaN marks a failed pairing
  std::vector<std::vector<bool>> direct;              // training pairs
  std::vector<PairingResult> pairings;                // row-major completed cells
};

// Evaluates every victim against arand and every adversary with a shared
// seed base. Adversary->victim training links are read from the adversary
// run manifests.
TransferMatrix build_transfer_matrix(const std::vector<std::filesystem::path>& victim_checkpoints,
                                     const std::vector<std::filesystem::path>& adversary_checkpoints,
                                     const LevelSpec& level, int episodes = 30,
                                     std::uint64_t seed_base = kDefaultEvalSeedBase);

// (baseline - attacked) / baseline * 100, with baseline the victim's mean
// return against arand.
double percentage_decrease(double baseline, double attacked);

void write_pairings_csv(const std::vector<PairingResult>& pairings, const std::filesystem::path& path);
void write_matrix_csv(const TransferMatrix& matrix, const std::filesystem::path& path);
std::vector<PairingResult> read_pairings_csv(const std::filesystem::path& path);

// Victim id recorded in an adversary run's manifest ("" when absent).
std::string adversary_trained_against(const std::filesystem::path& adversary_run_dir);

}  // namespace blockland
