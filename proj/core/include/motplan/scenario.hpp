#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "motplan/clustering.hpp"
#include "motplan/controller.hpp"
#include "motplan/kinematics.hpp"
#include "motplan/scan_frontend.hpp"
#include "motplan/sim_world.hpp"
#include "motplan/tracking.hpp"

namespace motplan {

/// Malformed scenario; what() names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ConfigNotFound : public std::runtime_error {
 public:
  explicit ConfigNotFound(const std::filesystem::path& path)
      : std::runtime_error("scenario file not found: " + path.string()) {}
};

enum class EgoModel { tricycle, unicycle };

struct EgoConfig {
  Pose2 start;
  Vec2 goal;
  EgoModel model = EgoModel::unicycle;
  TricycleParams tricycle;
};

struct MetricsConfig {
  double burn_in = 2.0;            // s, excluded from RMSE
  double goal_tolerance = 0.3;     // m
  double truth_match_radius = 1.0; // m
};

struct ScenarioConfig {
  std::string name;
  std::shared_ptr<const OccupancyGrid> map = std::make_shared<const OccupancyGrid>();
  std::vector<EgoConfig> egos;
  std::vector<LidarSpec> lidars;
  std::vector<AgentScript> agents;
  ControllerConfig controller;
  ObstacleCostMode obstacle_cost = ObstacleCostMode::projected;
  TrackerParams tracker;
  FrontendParams frontend;
  ClusterParams clustering;
  MetricsConfig metrics;
  double dt = 0.1;
  double duration = 30.0;
  std::uint64_t seed = 0;
};

/// Throws ConfigError on malformed content.
ScenarioConfig parse_scenario(std::string_view json_text);

/// Throws ConfigNotFound if the path does not exist, ConfigError otherwise.
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace motplan
