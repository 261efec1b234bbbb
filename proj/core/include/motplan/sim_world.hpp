#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "motplan/geometry.hpp"

namespace motplan {

/// Static occupancy map, row-major, 0 = free, 1 = occupied. Cell (col, row)
/// covers [origin.x + col*res, origin.x + (col+1)*res) x [origin.y + row*res, ...).
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(double width_m, double height_m, double resolution_m, Vec2 origin = {});

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  double resolution() const { return resolution_; }
  Vec2 origin() const { return origin_; }
  bool empty() const { return cells_.empty(); }

  void set_occupied(int col, int row, bool occupied = true);
  bool occupied(int col, int row) const;
  bool occupied_at(Vec2 p) const;
  std::size_t occupied_count() const;

  /// Distance along a unit direction to the first occupied cell, if any
  /// lies within max_range.
  std::optional<double> raycast(Vec2 origin, Vec2 dir, double max_range) const;

  /// True if any occupied cell lies within `margin` of p.
  bool near_occupied(Vec2 p, double margin) const;

 private:
  int cols_ = 0;
  int rows_ = 0;
  double resolution_ = 1.0;
  Vec2 origin_{};
  std::vector<std::uint8_t> cells_;
};

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Ground-truth kinematic state of a scripted agent.
struct AgentState {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

/// A convex body that moves by piecewise-linear interpolation between
/// timed waypoints. It holds the first waypoint before its time and the last
/// one after it. The body frame stays aligned with the map frame.
struct AgentScript {
  int id = 0;
  Polygon shape;
  std::vector<Waypoint> waypoints;

  /// Throws std::invalid_argument if the shape is not a proper convex
  /// polygon or waypoint times are not strictly increasing.
  void validate() const;
  AgentState state_at(double t) const;
  Polygon polygon_at(double t) const;
};

struct LidarSpec {
  double fov_deg = 275.0;
  double angular_resolution_deg = 0.39;
  double max_range = 20.0;
  double range_noise_sigma = 0.0;
  Pose2 mount{};

  void validate() const;
  int beam_count() const;
  /// Sensor-frame bearing of beam i; beams are centered symmetrically on the
  /// sensor's x axis.
  double bearing(int beam) const;
};

/// One polar sweep in the sensor frame. Beams without a return carry
/// max_range and valid = 0.
struct LaserScan {
  double stamp = 0.0;
  std::vector<double> ranges;
  std::vector<double> bearings;
  std::vector<std::uint8_t> valid;
};

/// Obstacle body visible to the lidar at one instant.
struct Body {
  enum class Kind { agent, robot };
  Kind kind = Kind::agent;
  int id = 0;
  Polygon polygon;  // map frame
};

/// Immutable view of the world at time t.
struct WorldSnapshot {
  double t = 0.0;
  std::shared_ptr<const OccupancyGrid> map;
  std::vector<Body> bodies;
};

class World {
 public:
  World(std::shared_ptr<const OccupancyGrid> map, std::vector<AgentScript> agents);

  const OccupancyGrid& map() const { return *map_; }
  std::span<const AgentScript> agents() const { return agents_; }

  /// Agent bodies at t plus any extra bodies (e.g. robot footprints).
  WorldSnapshot snapshot(double t, std::vector<Body> extra = {}) const;

 private:
  std::shared_ptr<const OccupancyGrid> map_;
  std::vector<AgentScript> agents_;
};

/// Synthetic scan from a sensor mounted at spec.mount on a robot at
/// ego_pose. Bodies matching `exclude` (the scanning robot itself) are not
/// hit. Noise is drawn from a generator seeded with rng_seed only.
LaserScan raycast_scan(const WorldSnapshot& world, const Pose2& ego_pose, const LidarSpec& spec,
                       std::uint64_t rng_seed, std::optional<int> exclude_robot = std::nullopt);

std::vector<AgentState> ground_truth(const World& world, double t);

}  // namespace motplan
