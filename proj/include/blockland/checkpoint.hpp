#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "blockland/adam.hpp"
#include "blockland/net.hpp"

namespace blockland {

// Checkpoint JSON layout:
//   { "meta": { "architecture": {...}, "seed": ..., "trained_env_steps": ...,
//               "opponent_tag": ..., "role": ... },
//     "actor":  [ {"weights": [[...]], "biases": [...]}, ... 3 layers ],
//     "critic": [ ... ],
//     "optimizer": { "m": ..., "v": ..., "step_count": ... }  (optional) }
// Doubles are written in shortest round-trip decimal form, so
// load(save(p)) == p bitwise for all finite values.
struct CheckpointMeta {
  std::uint64_t seed = 0;
  long trained_env_steps = 0;
  std::string opponent_tag;       // "arand", "natural", or "checkpoint:<digest>"
  std::string role = "robot";     // which side this policy plays
  // Architecture assumptions not stated by the training recipe are recorded
  // here so every artifact carries them.
  std::string activation = "tanh";
  std::string init = "orthogonal gains sqrt2/sqrt2/{0.01 actor, 1.0 critic}, zero biases";
};

struct Checkpoint {
  ActorCriticParams params;
  CheckpointMeta meta;
  std::optional<AdamState> optimizer;
};

void save_checkpoint(const std::filesystem::path& path, const ActorCriticParams& params, const CheckpointMeta& meta,
                     const AdamState* optimizer = nullptr);

// Throws IoError when unreadable, ConfigError (naming the offending field)
// on schema or shape mismatch.
Checkpoint load_checkpoint(const std::filesystem::path& path);

// FNV-1a 64 over the file bytes. Serialization is canonical, so identical
// content gives identical digests on any platform.
std::string checkpoint_digest(const std::filesystem::path& path);

}  // namespace blockland
