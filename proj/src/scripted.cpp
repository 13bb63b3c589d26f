#include "blockland/scripted.hpp"

namespace blockland {

Action arand_action(Pcg32& rng) {
  return static_cast<Action>(rng.uniform_int(kNumActions));
}

std::pair<Action, NaturalWalkState> natural_walk_action(NaturalWalkState state, Pcg32& rng) {
  if (state.remaining == 0) {
    state.direction = static_cast<Action>(rng.uniform_int(4));
    state.remaining = 5 + static_cast<int>(rng.uniform_int(11));
  }
  --state.remaining;
  return {state.direction, state};
}

}  // namespace blockland
