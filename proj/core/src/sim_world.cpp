#include "motplan/sim_world.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace motplan {

// ---------------------------------------------------------------- grid

OccupancyGrid::OccupancyGrid(double width_m, double height_m, double resolution_m, Vec2 origin)
    : resolution_(resolution_m), origin_(origin) {
  if (!(resolution_m > 0.0) || !(width_m > 0.0) || !(height_m > 0.0)) {
    throw std::invalid_argument("OccupancyGrid: width, height and resolution must be positive");
  }
  cols_ = static_cast<int>(std::ceil(width_m / resolution_m - 1e-9));
  rows_ = static_cast<int>(std::ceil(height_m / resolution_m - 1e-9));
  cells_.assign(static_cast<std::size_t>(cols_) * rows_, 0);
}

void OccupancyGrid::set_occupied(int col, int row, bool occupied) {
  if (col < 0 || row < 0 || col >= cols_ || row >= rows_) {
    throw std::out_of_range("OccupancyGrid: cell (" + std::to_string(col) + ", " +
                            std::to_string(row) + ") outside map");
  }
  cells_[static_cast<std::size_t>(row) * cols_ + col] = occupied ? 1 : 0;
}

bool OccupancyGrid::occupied(int col, int row) const {
  if (col < 0 || row < 0 || col >= cols_ || row >= rows_) {
    return false;
  }
  return cells_[static_cast<std::size_t>(row) * cols_ + col] != 0;
}

bool OccupancyGrid::occupied_at(Vec2 p) const {
  const Vec2 local = p - origin_;
  return occupied(static_cast<int>(std::floor(local.x / resolution_)),
                  static_cast<int>(std::floor(local.y / resolution_)));
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::optional<double> OccupancyGrid::raycast(Vec2 origin, Vec2 dir, double max_range) const {
  if (cells_.empty()) {
    return std::nullopt;
  }
  const Vec2 local = origin - origin_;
  const double width = cols_ * resolution_;
  const double height = rows_ * resolution_;

  // Clip the ray against the map rectangle (slab method).
  double t_enter = 0.0;
  double t_exit = max_range;
  const double lo[2] = {0.0, 0.0};
  const double hi[2] = {width, height};
  const double o[2] = {local.x, local.y};
  const double d[2] = {dir.x, dir.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < lo[axis] || o[axis] >= hi[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (lo[axis] - o[axis]) / d[axis];
    double t1 = (hi[axis] - o[axis]) / d[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
  }
  if (t_enter > t_exit) {
    return std::nullopt;
  }

  // Amanatides-Woo traversal, starting from the entry point.
  const Vec2 start = local + dir * t_enter;
  int col = std::clamp(static_cast<int>(std::floor(start.x / resolution_)), 0, cols_ - 1);
  int row = std::clamp(static_cast<int>(std::floor(start.y / resolution_)), 0, rows_ - 1);
  const int step_col = dir.x > 0 ? 1 : -1;
  const int step_row = dir.y > 0 ? 1 : -1;
  constexpr double inf = std::numeric_limits<double>::infinity();
  double t_next_col = dir.x != 0.0
                          ? ((col + (step_col > 0 ? 1 : 0)) * resolution_ - local.x) / dir.x
                          : inf;
  double t_next_row = dir.y != 0.0
                          ? ((row + (step_row > 0 ? 1 : 0)) * resolution_ - local.y) / dir.y
                          : inf;
  const double dt_col = dir.x != 0.0 ? resolution_ / std::abs(dir.x) : inf;
  const double dt_row = dir.y != 0.0 ? resolution_ / std::abs(dir.y) : inf;

  double t = t_enter;
  while (t <= t_exit) {
    if (occupied(col, row)) {
      return t;
    }
    if (t_next_col < t_next_row) {
      t = t_next_col;
      t_next_col += dt_col;
      col += step_col;
    } else {
      t = t_next_row;
      t_next_row += dt_row;
      row += step_row;
    }
    if (col < 0 || row < 0 || col >= cols_ || row >= rows_) {
      break;
    }
  }
  return std::nullopt;
}

bool OccupancyGrid::near_occupied(Vec2 p, double margin) const {
  if (cells_.empty()) {
    return false;
  }
  const Vec2 local = p - origin_;
  const int c0 = std::max(0, static_cast<int>(std::floor((local.x - margin) / resolution_)));
  const int c1 = std::min(cols_ - 1, static_cast<int>(std::floor((local.x + margin) / resolution_)));
  const int r0 = std::max(0, static_cast<int>(std::floor((local.y - margin) / resolution_)));
  const int r1 = std::min(rows_ - 1, static_cast<int>(std::floor((local.y + margin) / resolution_)));
  const double margin2 = margin * margin;
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) {
      if (!occupied(c, r)) {
        continue;
      }
      // Distance from p to the cell rectangle.
      const double x0 = c * resolution_;
      const double y0 = r * resolution_;
      const double dx = std::max({x0 - local.x, 0.0, local.x - (x0 + resolution_)});
      const double dy = std::max({y0 - local.y, 0.0, local.y - (y0 + resolution_)});
      if (dx * dx + dy * dy <= margin2) {
        return true;
      }
    }
  }
  return false;
}

// -------------------------------------------------------------- agents

void AgentScript::validate() const {
  const std::string who = "agent " + std::to_string(id);
  if (!is_convex_polygon(shape)) {
    throw std::invalid_argument(who + ": shape must be a convex polygon with >= 3 non-collinear vertices");
  }
  if (waypoints.empty()) {
    throw std::invalid_argument(who + ": at least one waypoint required");
  }
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (!(waypoints[i].t > waypoints[i - 1].t)) {
      throw std::invalid_argument(who + ": waypoint times must be strictly increasing");
    }
  }
}

AgentState AgentScript::state_at(double t) const {
  AgentState s;
  s.id = id;
  if (waypoints.empty()) {
    return s;
  }
  if (t < waypoints.front().t) {
    s.x = waypoints.front().x;
    s.y = waypoints.front().y;
    return s;
  }
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
    const Waypoint& a = waypoints[i];
    const Waypoint& b = waypoints[i + 1];
    if (t >= a.t && t < b.t) {
      const double span = b.t - a.t;
      s.vx = (b.x - a.x) / span;
      s.vy = (b.y - a.y) / span;
      s.x = a.x + s.vx * (t - a.t);
      s.y = a.y + s.vy * (t - a.t);
      return s;
    }
  }
  s.x = waypoints.back().x;
  s.y = waypoints.back().y;
  return s;
}

Polygon AgentScript::polygon_at(double t) const {
  const AgentState s = state_at(t);
  return transform_polygon({s.x, s.y, 0.0}, shape);
}

// --------------------------------------------------------------- lidar

void LidarSpec::validate() const {
  if (!(fov_deg > 0.0) || fov_deg > 360.0) {
    throw std::invalid_argument("lidar: fov_deg must be in (0, 360]");
  }
  if (!(angular_resolution_deg > 0.0) || angular_resolution_deg > fov_deg) {
    throw std::invalid_argument("lidar: ang_res_deg must be in (0, fov_deg]");
  }
  if (!(max_range > 0.0)) {
    throw std::invalid_argument("lidar: max_range_m must be positive");
  }
  if (!(range_noise_sigma >= 0.0)) {
    throw std::invalid_argument("lidar: noise_sigma_m must be non-negative");
  }
}

int LidarSpec::beam_count() const {
  return std::max(1, static_cast<int>(std::lround(fov_deg / angular_resolution_deg)));
}

double LidarSpec::bearing(int beam) const {
  const double fov = fov_deg * std::numbers::pi / 180.0;
  const int n = beam_count();
  return -0.5 * fov + (beam + 0.5) * fov / n;
}

// --------------------------------------------------------------- world

World::World(std::shared_ptr<const OccupancyGrid> map, std::vector<AgentScript> agents)
    : map_(map ? std::move(map) : std::make_shared<const OccupancyGrid>()), agents_(std::move(agents)) {
  for (const auto& a : agents_) {
    a.validate();
  }
}

WorldSnapshot World::snapshot(double t, std::vector<Body> extra) const {
  WorldSnapshot snap;
  snap.t = t;
  snap.map = map_;
  snap.bodies.reserve(agents_.size() + extra.size());
  for (const auto& a : agents_) {
    snap.bodies.push_back({Body::Kind::agent, a.id, a.polygon_at(t)});
  }
  for (auto& b : extra) {
    snap.bodies.push_back(std::move(b));
  }
  return snap;
}

LaserScan raycast_scan(const WorldSnapshot& world, const Pose2& ego_pose, const LidarSpec& spec,
                       std::uint64_t rng_seed, std::optional<int> exclude_robot) {
  spec.validate();
  const Pose2 sensor = compose(ego_pose, spec.mount);
  const int n = spec.beam_count();

  LaserScan scan;
  scan.stamp = world.t;
  scan.ranges.resize(n);
  scan.bearings.resize(n);
  scan.valid.assign(n, 0);

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  for (int i = 0; i < n; ++i) {
    const double bearing = spec.bearing(i);
    const double heading = sensor.theta + bearing;
    const Vec2 dir{std::cos(heading), std::sin(heading)};
    double best = std::numeric_limits<double>::infinity();
    for (const Body& body : world.bodies) {
      if (exclude_robot && body.kind == Body::Kind::robot && body.id == *exclude_robot) {
        continue;
      }
      if (auto t = ray_polygon_intersection(sensor.position(), dir, body.polygon)) {
        best = std::min(best, *t);
      }
    }
    if (world.map) {
      if (auto t = world.map->raycast(sensor.position(), dir, spec.max_range)) {
        best = std::min(best, *t);
      }
    }
    // Draw for every beam so the noise stream does not depend on the hits.
    const double eps = noise(rng) * spec.range_noise_sigma;
    scan.bearings[i] = bearing;
    if (best <= spec.max_range) {
      scan.ranges[i] = std::clamp(best + eps, 0.0, spec.max_range);
      scan.valid[i] = 1;
    } else {
      scan.ranges[i] = spec.max_range;
    }
  }
  return scan;
}

std::vector<AgentState> ground_truth(const World& world, double t) {
  std::vector<AgentState> out;
  out.reserve(world.agents().size());
  for (const auto& a : world.agents()) {
    out.push_back(a.state_at(t));
  }
  return out;
}

}  // namespace motplan
