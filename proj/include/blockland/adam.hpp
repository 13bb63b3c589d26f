#pragma once

#include "blockland/net.hpp"

namespace blockland {

// Adam with bias correction; epsilon added outside the square root.
struct AdamState {
  Gradients m;  // first moments, zero-initialized
  Gradients v;  // second moments, zero-initialized
  long step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-5;
};

AdamState init_adam(const ActorCriticParams& params);

void adam_update(ActorCriticParams& params, const Gradients& grads, AdamState& state, double lr);

}  // namespace blockland
