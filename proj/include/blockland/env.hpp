#pragma once

#include <Eigen/Core>
#include <array>
#include <span>
#include <utility>

#include "blockland/level.hpp"

namespace blockland {

// Fixed action encoding shared by every policy and checkpoint.
enum class Action : int {
  MoveUp = 0,
  MoveDown = 1,
  MoveLeft = 2,
  MoveRight = 3,
  NoOp = 4,
  Interact = 5,
};
constexpr int kNumActions = 6;

enum class AgentId { Robot, Human };

enum class BoxLocation { OnFloor, HeldByRobot, HeldByHuman, OnCart };

struct BoxState {
  Eigen::Vector2d pos{0.0, 0.0};
  BoxLocation location = BoxLocation::OnFloor;
};

struct EnvState {
  int t = 0;
  Eigen::Vector2d robot_pos{0.0, 0.0};
  Eigen::Vector2d human_pos{0.0, 0.0};
  std::array<BoxState, 2> boxes;
  bool terminated = false;
  bool truncated = false;
};

// Egocentric 12-vector:
//   [self_x, self_y, other_x, other_y,
//    box1_x, box1_y, box2_x, box2_y,
//    cart_x, cart_y, self_held, other_held]
// Positions affinely scaled to [-1, 1] (x -> 2x/x_max - 1, same for y);
// held flags are 0/1.
constexpr int kObsDim = 12;
using Observation = Eigen::Matrix<double, kObsDim, 1>;

struct StepResult {
  Observation obs_robot;
  Observation obs_human;
  double reward_robot = 0.0;
  bool terminated = false;
  bool truncated = false;
};

struct ResetResult {
  EnvState state;
  Observation obs_robot;
  Observation obs_human;
};

// Places agents at their spawn points and both boxes on the floor. The
// environment itself is deterministic; any randomness lives in the
// policies' RNG streams (see rng.hpp).
ResetResult reset(const LevelSpec& spec);

// Advances one step. The robot's action resolves before the human's.
// Moves displace by move_step along one axis and clamp to the agent's own
// side of the road and the world boundary. Interact picks up the nearest
// on-floor box within interact_radius (ties broken by lower box index), or
// places a held box if the cart is within interact_radius; boxes on the
// cart are locked. reward_robot counts only the robot's own pickup/place
// events, minus the per-step penalty. Pure function of (state, actions).
// Throws UsageError when called on a finished episode.
std::pair<EnvState, StepResult> step(const EnvState& state, const LevelSpec& spec, Action a_robot, Action a_human);

Observation observe(const EnvState& state, const LevelSpec& spec, AgentId agent);

double episode_return(std::span<const StepResult> trace);

}  // namespace blockland
