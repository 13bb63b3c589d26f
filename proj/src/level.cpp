#include "blockland/level.hpp"

#include "blockland/errors.hpp"
#include "blockland/io.hpp"

namespace blockland {

namespace {

nlohmann::json point_to_json(const Eigen::Vector2d& p) {
  return nlohmann::json{{"x", p.x()}, {"y", p.y()}};
}

Eigen::Vector2d point_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
    throw ConfigError(std::string("level field '") + field + "' must be an {x, y} object");
  }
  return Eigen::Vector2d(j.at("x").get<double>(), j.at("y").get<double>());
}

}  // namespace

LevelSpec twosides() {
  LevelSpec s;
  s.name = "twosides";
  s.x_max = 12.0;
  s.y_max = 8.0;
  s.road_x_lo = 5.0;
  s.road_x_hi = 7.0;
  s.robot_spawn = {2.5, 4.0};
  s.human_spawn = {9.5, 4.0};
  s.box_spawns = {Eigen::Vector2d{1.0, 1.0}, Eigen::Vector2d{4.0, 7.0}};
  s.cart_pos = {1.0, 7.0};
  s.move_step = 0.25;
  s.interact_radius = 1.0;
  s.max_steps = 500;
  s.reward_pickup = 1.0;
  s.reward_place = 2.0;
  s.step_penalty = 0.005;
  return s;
}

void validate_level(const LevelSpec& spec) {
  auto fail = [&](const std::string& why) { throw ConfigError("invalid level '" + spec.name + "': " + why); };

  if (!(spec.x_max > 0.0) || !(spec.y_max > 0.0)) fail("world extent must be positive");
  if (!(spec.road_x_lo < spec.road_x_hi)) fail("road_x_range must be a nonempty interval");
  if (spec.road_x_lo <= 0.0 || spec.road_x_hi >= spec.x_max) fail("road must leave room on both sides");
  if (!(spec.move_step > 0.0)) fail("move_step must be positive");
  if (!(spec.interact_radius > 0.0)) fail("interact_radius must be positive");
  if (spec.max_steps <= 0) fail("max_steps must be positive");

  auto on_robot_side = [&](const Eigen::Vector2d& p) {
    return p.x() >= 0.0 && p.x() < spec.road_x_lo && p.y() >= 0.0 && p.y() <= spec.y_max;
  };
  auto on_human_side = [&](const Eigen::Vector2d& p) {
    return p.x() > spec.road_x_hi && p.x() <= spec.x_max && p.y() >= 0.0 && p.y() <= spec.y_max;
  };

  if (!on_robot_side(spec.robot_spawn)) fail("robot_spawn must lie strictly on the low-x side of the road");
  if (!on_human_side(spec.human_spawn)) fail("human_spawn must lie strictly on the high-x side of the road");
  if (!on_robot_side(spec.box_spawns[0])) fail("box_spawns[0] must lie strictly on the low-x side of the road");
  if (!on_robot_side(spec.box_spawns[1])) fail("box_spawns[1] must lie strictly on the low-x side of the road");
  if (!on_robot_side(spec.cart_pos)) fail("cart_pos must lie strictly on the low-x side of the road");
}

nlohmann::json level_to_json(const LevelSpec& spec) {
  return nlohmann::json{
      {"name", spec.name},
      {"world_extent", {{"x_max", spec.x_max}, {"y_max", spec.y_max}}},
      {"road_x_range", {{"lo", spec.road_x_lo}, {"hi", spec.road_x_hi}}},
      {"robot_spawn", point_to_json(spec.robot_spawn)},
      {"human_spawn", point_to_json(spec.human_spawn)},
      {"box_spawns", {point_to_json(spec.box_spawns[0]), point_to_json(spec.box_spawns[1])}},
      {"cart_pos", point_to_json(spec.cart_pos)},
      {"move_step", spec.move_step},
      {"interact_radius", spec.interact_radius},
      {"max_steps", spec.max_steps},
      {"reward_pickup", spec.reward_pickup},
      {"reward_place", spec.reward_place},
      {"step_penalty", spec.step_penalty},
  };
}

LevelSpec level_from_json(const nlohmann::json& j) {
  LevelSpec s;
  try {
    s.name = j.value("name", std::string("unnamed"));
    s.x_max = j.at("world_extent").at("x_max").get<double>();
    s.y_max = j.at("world_extent").at("y_max").get<double>();
    s.road_x_lo = j.at("road_x_range").at("lo").get<double>();
    s.road_x_hi = j.at("road_x_range").at("hi").get<double>();
    s.robot_spawn = point_from_json(j.at("robot_spawn"), "robot_spawn");
    s.human_spawn = point_from_json(j.at("human_spawn"), "human_spawn");
    const auto& boxes = j.at("box_spawns");
    if (!boxes.is_array() || boxes.size() != 2) throw ConfigError("level field 'box_spawns' must list exactly two points");
    s.box_spawns = {point_from_json(boxes[0], "box_spawns[0]"), point_from_json(boxes[1], "box_spawns[1]")};
    s.cart_pos = point_from_json(j.at("cart_pos"), "cart_pos");
    s.move_step = j.at("move_step").get<double>();
    s.interact_radius = j.at("interact_radius").get<double>();
    s.max_steps = j.at("max_steps").get<int>();
    s.reward_pickup = j.at("reward_pickup").get<double>();
    s.reward_place = j.at("reward_place").get<double>();
    s.step_penalty = j.at("step_penalty").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed level JSON: ") + e.what());
  }
  validate_level(s);
  return s;
}

LevelSpec load_level(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse level file " + path.string() + ": " + e.what());
  }
  return level_from_json(j);
}

void save_level(const LevelSpec& spec, const std::filesystem::path& path) {
  write_file(path, level_to_json(spec).dump(2) + "\n");
}

}  // namespace blockland
