#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "motplan/scenario.hpp"

namespace motplan {
namespace {

const char* kMinimal = R"({
  "dt_s": 0.1, "duration_s": 5.0, "seed": 3,
  "ego": {"start_pose": [0, 0, 0], "goal": [5, 0]}
})";

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(Scenario, MinimalConfigUsesDefaults) {
  const ScenarioConfig c = parse_scenario(kMinimal);
  ASSERT_EQ(c.egos.size(), 1u);
  EXPECT_EQ(c.egos[0].model, EgoModel::unicycle);
  EXPECT_EQ(c.egos[0].goal, (Vec2{5, 0}));
  EXPECT_EQ(c.seed, 3u);
  ASSERT_EQ(c.lidars.size(), 1u);
  EXPECT_DOUBLE_EQ(c.controller.dt, 0.1);
  EXPECT_DOUBLE_EQ(c.tracker.dt, 0.1);
  EXPECT_EQ(c.obstacle_cost, ObstacleCostMode::projected);
  EXPECT_TRUE(c.agents.empty());
}

TEST(Scenario, FullSections) {
  const ScenarioConfig c = parse_scenario(R"({
    "dt_s": 0.05, "duration_s": 2.0,
    "map": {"width_m": 4, "height_m": 2, "resolution_m": 0.5, "origin": [-2, -1], "occupied_cells": [[0, 0], [3, 1]]},
    "egos": [{"start_pose": [0, 0, 0], "goal": [1, 0], "model": "tricycle", "L": 1.5},
             {"start_pose": [1, 1, 0], "goal": [0, 1]}],
    "lidar": [{"fov_deg": 180}, {"fov_deg": 90, "mount_pose": [-0.5, 0, 3.14159]}],
    "agents": [{"id": 4, "shape": [[-0.2, -0.2], [0.2, -0.2], [0.2, 0.2], [-0.2, 0.2]],
                "waypoints": [[0, 0, 0], [1, 0, 1]]}],
    "controller": {"v_min": 0.0, "n_v": 5, "obstacle_cost": "ttc", "squared_costs": true},
    "tracker": {"N": 20, "W": 9, "R_meas": [0.01, 0.02], "associator": "greedy"},
    "frontend": {"downsample_m": 0.0},
    "clustering": {"k_min": 4, "d_thresh_m": 0.2},
    "metrics": {"burn_in_s": 1.0}
  })");
  EXPECT_EQ(c.map->occupied_count(), 2u);
  EXPECT_TRUE(c.map->occupied(3, 1));
  ASSERT_EQ(c.egos.size(), 2u);
  EXPECT_EQ(c.egos[0].model, EgoModel::tricycle);
  EXPECT_DOUBLE_EQ(c.egos[0].tricycle.wheelbase, 1.5);
  ASSERT_EQ(c.lidars.size(), 2u);
  EXPECT_DOUBLE_EQ(c.lidars[1].mount.x, -0.5);
  ASSERT_EQ(c.agents.size(), 1u);
  EXPECT_EQ(c.agents[0].id, 4);
  EXPECT_EQ(c.controller.n_v, 5);
  EXPECT_DOUBLE_EQ(c.controller.dt, 0.05);
  EXPECT_EQ(c.obstacle_cost, ObstacleCostMode::ttc);
  EXPECT_TRUE(c.controller.squared_costs);
  EXPECT_EQ(c.tracker.ensemble_size, 20u);
  EXPECT_EQ(c.tracker.window, 9u);
  EXPECT_DOUBLE_EQ(c.tracker.measurement_noise(1, 1), 0.02);
  EXPECT_EQ(c.tracker.associator, Associator::greedy);
  EXPECT_EQ(c.clustering.min_points, 4u);
  EXPECT_DOUBLE_EQ(c.metrics.burn_in, 1.0);
}

TEST(Scenario, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"ego": {"start_pose": [0, 0, 0]}})"), "ego.goal");
  EXPECT_EQ(field_of(R"({"dt_s": "fast", "ego": {"start_pose": [0, 0, 0], "goal": [1, 0]}})"), "dt_s");
  EXPECT_EQ(field_of(R"({"bogus": 1, "ego": {"start_pose": [0, 0, 0], "goal": [1, 0]}})"), "bogus");
  EXPECT_EQ(field_of(R"({"ego": {"start_pose": [0, 0], "goal": [1, 0]}})"), "ego.start_pose");
  EXPECT_EQ(field_of(R"({"ego": {"start_pose": [0, 0, 0], "goal": [1, 0], "model": "tank"}})"), "ego.model");
  EXPECT_EQ(field_of(R"({"ego": {"start_pose": [0, 0, 0], "goal": [1, 0]},
                          "controller": {"n_v": 0.5}})"),
            "controller.n_v");
  EXPECT_EQ(field_of(R"({"ego": {"start_pose": [0, 0, 0], "goal": [1, 0]},
                          "tracker": {"associator": "magic"}})"),
            "tracker.associator");
  const std::string agents = field_of(R"({"ego": {"start_pose": [0, 0, 0], "goal": [1, 0]},
      "agents": [{"id": 1, "shape": [[0, 0], [1, 0]], "waypoints": [[0, 0, 0]]}]})");
  EXPECT_NE(agents.find("agents"), std::string::npos) << agents;
  EXPECT_EQ(field_of("{not json"), "<root>");
  EXPECT_EQ(field_of(R"({"dt_s": 0.1})"), "ego");
}

TEST(Scenario, DuplicateAgentIdsRejected) {
  const std::string f = field_of(R"({"ego": {"start_pose": [0, 0, 0], "goal": [1, 0]},
    "agents": [{"id": 1, "shape": [[0, 0], [1, 0], [0, 1]], "waypoints": [[0, 0, 0]]},
               {"id": 1, "shape": [[0, 0], [1, 0], [0, 1]], "waypoints": [[0, 0, 0]]}]})");
  EXPECT_NE(f.find("agents"), std::string::npos) << f;
}

TEST(Scenario, MissingFileIsDistinct) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigNotFound);
}

TEST(Scenario, ShippedScenariosLoad) {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(MOTPLAN_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_scenario(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5u);
  EXPECT_EQ(load_scenario(std::filesystem::path(MOTPLAN_SCENARIO_DIR) / "scenario_4_five_robots.json").egos.size(),
            5u);
}

}  // namespace
}  // namespace motplan
