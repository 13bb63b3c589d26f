#pragma once

#include <utility>

#include "blockland/env.hpp"
#include "blockland/rng.hpp"

namespace blockland {

// Uniform random policy: each of the 6 actions with probability exactly 1/6.
Action arand_action(Pcg32& rng);

// Walks in one direction for a uniformly drawn duration of 5..15 steps
// (inclusive), redrawing on expiry; never emits NoOp or Interact.
struct NaturalWalkState {
  Action direction = Action::MoveUp;
  int remaining = 0;  // 0 means the next call draws a fresh leg
};

std::pair<Action, NaturalWalkState> natural_walk_action(NaturalWalkState state, Pcg32& rng);

}  // namespace blockland
