#pragma once

#include <utility>
#include <vector>

#include "blockland/net.hpp"

namespace blockland {

struct PpoLossSpec {
  double clip_range = 0.2;
  double vf_coef = 0.5;
  double ent_coef = 0.01;
};

// One update minibatch. Advantages arrive already normalized; they are
// treated as constants by the gradient.
struct Minibatch {
  Mat obs;                    // kObsDim x B, observations as columns
  std::vector<int> actions;   // B
  Vec old_log_probs;          // B
  Vec advantages;             // B
  Vec return_targets;         // B
};

struct LossStats {
  double total = 0.0;
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  double clip_fraction = 0.0;
  double approx_kl = 0.0;  // mean(log pi_old - log pi_new), diagnostic only
};

// total = policy + vf_coef * value - ent_coef * entropy, where
//   policy  = -mean(min(rho * A, clip(rho, 1-eps, 1+eps) * A)),
//   value   = mean((V - return_target)^2), no value clipping,
//   entropy = mean categorical entropy of the new policy.
LossStats ppo_loss(const ActorCriticParams& params, const Minibatch& batch, const PpoLossSpec& spec);

// Exact reverse-mode gradient of LossStats::total with respect to every
// parameter. Throws NumericError (with the offending detail) when the loss
// is not finite.
std::pair<LossStats, Gradients> ppo_loss_backward(const ActorCriticParams& params, const Minibatch& batch,
                                                  const PpoLossSpec& spec);

}  // namespace blockland
