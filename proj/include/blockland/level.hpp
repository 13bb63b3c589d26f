#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace blockland {

// Immutable geometry, reward constants, and episode limits of one level.
// Both agents live on opposite sides of road_x: the robot strictly below
// road_x.lo, the human strictly above road_x.hi.
struct LevelSpec {
  std::string name;
  double x_max = 0.0;
  double y_max = 0.0;
  double road_x_lo = 0.0;
  double road_x_hi = 0.0;
  Eigen::Vector2d robot_spawn{0.0, 0.0};
  Eigen::Vector2d human_spawn{0.0, 0.0};
  std::array<Eigen::Vector2d, 2> box_spawns{Eigen::Vector2d{0.0, 0.0}, Eigen::Vector2d{0.0, 0.0}};
  Eigen::Vector2d cart_pos{0.0, 0.0};
  double move_step = 0.0;
  double interact_radius = 0.0;
  int max_steps = 0;
  double reward_pickup = 0.0;
  double reward_place = 0.0;
  double step_penalty = 0.0;
};

// The shipped two-sides level: 12x8 world, road x in [5,7], robot side on
// the left with both boxes and the cart, human side on the right.
LevelSpec twosides();

// Throws ConfigError on any invariant violation (spawn inside or across
// the road, non-positive steps, bad extents).
void validate_level(const LevelSpec& spec);

nlohmann::json level_to_json(const LevelSpec& spec);
LevelSpec level_from_json(const nlohmann::json& j);

LevelSpec load_level(const std::filesystem::path& path);
void save_level(const LevelSpec& spec, const std::filesystem::path& path);

}  // namespace blockland
