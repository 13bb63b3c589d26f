#include "blockland/env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockland/errors.hpp"

namespace blockland {

namespace {

// The road band is closed: the robot may stand at road_x_lo, the human at
// road_x_hi, but neither crosses into the open interval.
void clamp_to_side(Eigen::Vector2d& pos, const LevelSpec& spec, AgentId agent) {
  if (agent == AgentId::Robot) {
    pos.x() = std::clamp(pos.x(), 0.0, spec.road_x_lo);
  } else {
    pos.x() = std::clamp(pos.x(), spec.road_x_hi, spec.x_max);
  }
  pos.y() = std::clamp(pos.y(), 0.0, spec.y_max);
}

int held_box_index(const EnvState& s, AgentId agent) {
  const BoxLocation held = agent == AgentId::Robot ? BoxLocation::HeldByRobot : BoxLocation::HeldByHuman;
  for (int i = 0; i < 2; ++i) {
    if (s.boxes[i].location == held) return i;
  }
  return -1;
}

// Resolves one agent's action in place; returns the agent's own event
// reward (pickup/place) for this step.
double resolve_action(EnvState& s, const LevelSpec& spec, AgentId agent, Action a) {
  Eigen::Vector2d& pos = agent == AgentId::Robot ? s.robot_pos : s.human_pos;

  switch (a) {
    case Action::MoveUp:
    case Action::MoveDown:
    case Action::MoveLeft:
    case Action::MoveRight: {
      Eigen::Vector2d delta{0.0, 0.0};
      if (a == Action::MoveUp) delta.y() = spec.move_step;
      if (a == Action::MoveDown) delta.y() = -spec.move_step;
      if (a == Action::MoveLeft) delta.x() = -spec.move_step;
      if (a == Action::MoveRight) delta.x() = spec.move_step;
      pos += delta;
      clamp_to_side(pos, spec, agent);
      const int held = held_box_index(s, agent);
      if (held >= 0) s.boxes[held].pos = pos;
      return 0.0;
    }
    case Action::NoOp:
      return 0.0;
    case Action::Interact: {
      const int held = held_box_index(s, agent);
      if (held >= 0) {
        if ((spec.cart_pos - pos).norm() <= spec.interact_radius) {
          s.boxes[held].location = BoxLocation::OnCart;
          s.boxes[held].pos = spec.cart_pos;
          return spec.reward_place;
        }
        return 0.0;
      }
      int nearest = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 2; ++i) {
        if (s.boxes[i].location != BoxLocation::OnFloor) continue;
        const double d = (s.boxes[i].pos - pos).norm();
        if (d <= spec.interact_radius && d < best) {
          best = d;
          nearest = i;
        }
      }
      if (nearest >= 0) {
        s.boxes[nearest].location = agent == AgentId::Robot ? BoxLocation::HeldByRobot : BoxLocation::HeldByHuman;
        s.boxes[nearest].pos = pos;
        return spec.reward_pickup;
      }
      return 0.0;
    }
  }
  return 0.0;
}

double scale_x(double x, const LevelSpec& spec) { return 2.0 * x / spec.x_max - 1.0; }
double scale_y(double y, const LevelSpec& spec) { return 2.0 * y / spec.y_max - 1.0; }

}  // namespace

ResetResult reset(const LevelSpec& spec) {
  validate_level(spec);
  EnvState s;
  s.t = 0;
  s.robot_pos = spec.robot_spawn;
  s.human_pos = spec.human_spawn;
  s.boxes[0] = BoxState{spec.box_spawns[0], BoxLocation::OnFloor};
  s.boxes[1] = BoxState{spec.box_spawns[1], BoxLocation::OnFloor};
  s.terminated = false;
  s.truncated = false;
  return ResetResult{s, observe(s, spec, AgentId::Robot), observe(s, spec, AgentId::Human)};
}

std::pair<EnvState, StepResult> step(const EnvState& state, const LevelSpec& spec, Action a_robot, Action a_human) {
  if (state.terminated || state.truncated) {
    throw UsageError("step() called on a finished episode");
  }

  EnvState next = state;
  double robot_events = resolve_action(next, spec, AgentId::Robot, a_robot);
  resolve_action(next, spec, AgentId::Human, a_human);
  next.t = state.t + 1;

  const bool done = next.boxes[0].location == BoxLocation::OnCart && next.boxes[1].location == BoxLocation::OnCart;
  next.terminated = done;
  next.truncated = !done && next.t >= spec.max_steps;

  StepResult res;
  res.reward_robot = robot_events - spec.step_penalty;
  res.terminated = next.terminated;
  res.truncated = next.truncated;
  res.obs_robot = observe(next, spec, AgentId::Robot);
  res.obs_human = observe(next, spec, AgentId::Human);
  return {next, res};
}

Observation observe(const EnvState& state, const LevelSpec& spec, AgentId agent) {
  const Eigen::Vector2d& self = agent == AgentId::Robot ? state.robot_pos : state.human_pos;
  const Eigen::Vector2d& other = agent == AgentId::Robot ? state.human_pos : state.robot_pos;
  const double self_held = held_box_index(state, agent) >= 0 ? 1.0 : 0.0;
  const double other_held =
      held_box_index(state, agent == AgentId::Robot ? AgentId::Human : AgentId::Robot) >= 0 ? 1.0 : 0.0;

  Observation o;
  o << scale_x(self.x(), spec), scale_y(self.y(), spec),
      scale_x(other.x(), spec), scale_y(other.y(), spec),
      scale_x(state.boxes[0].pos.x(), spec), scale_y(state.boxes[0].pos.y(), spec),
      scale_x(state.boxes[1].pos.x(), spec), scale_y(state.boxes[1].pos.y(), spec),
      scale_x(spec.cart_pos.x(), spec), scale_y(spec.cart_pos.y(), spec),
      self_held, other_held;
  return o;
}

double episode_return(std::span<const StepResult> trace) {
  double total = 0.0;
  for (const StepResult& r : trace) total += r.reward_robot;
  return total;
}

}  // namespace blockland
