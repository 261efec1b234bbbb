#include "motplan/scan_frontend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace motplan {

PointCloud polar_to_cartesian(std::span<const double> ranges, std::span<const double> bearings,
                              std::span<const std::uint8_t> valid, double stamp) {
  if (ranges.size() != bearings.size() || ranges.size() != valid.size()) {
    throw std::invalid_argument("polar_to_cartesian: ranges, bearings and mask differ in length");
  }
  PointCloud cloud{Frame::sensor, stamp, {}};
  cloud.points.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (!valid[i]) {
      continue;
    }
    if (!(ranges[i] >= 0.0) || !std::isfinite(ranges[i])) {
      throw std::invalid_argument("polar_to_cartesian: ranges must be finite and non-negative");
    }
    cloud.points.push_back({ranges[i] * std::cos(bearings[i]), ranges[i] * std::sin(bearings[i])});
  }
  return cloud;
}

PointCloud polar_to_cartesian(const LaserScan& scan) {
  return polar_to_cartesian(scan.ranges, scan.bearings, scan.valid, scan.stamp);
}

namespace {

PointCloud apply_pose(const PointCloud& cloud, const Pose2& pose, Frame target) {
  PointCloud out{target, cloud.stamp, {}};
  out.points.reserve(cloud.points.size());
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  for (const Vec2& p : cloud.points) {
    out.points.push_back({c * p.x - s * p.y + pose.x, s * p.x + c * p.y + pose.y});
  }
  return out;
}

}  // namespace

PointCloud sensor_to_robot(const PointCloud& cloud, const Pose2& mount) {
  if (cloud.frame != Frame::sensor) {
    throw std::invalid_argument("sensor_to_robot: cloud is not in the sensor frame");
  }
  return apply_pose(cloud, mount, Frame::robot);
}

PointCloud transform_to_map(const PointCloud& cloud, const Pose2& robot_pose) {
  if (cloud.frame != Frame::robot) {
    throw std::invalid_argument("transform_to_map: cloud is not in the robot frame");
  }
  return apply_pose(cloud, robot_pose, Frame::map);
}

PointCloud merge_scans(std::span<const PointCloud> clouds, double max_stamp_skew) {
  PointCloud out{Frame::map, 0.0, {}};
  if (clouds.empty()) {
    return out;
  }
  double newest = clouds.front().stamp;
  for (const auto& c : clouds) {
    if (c.frame != Frame::map) {
      throw std::invalid_argument("merge_scans: all clouds must be in the map frame");
    }
    newest = std::max(newest, c.stamp);
  }
  out.stamp = newest;
  for (const auto& c : clouds) {
    if (newest - c.stamp <= max_stamp_skew) {
      out.points.insert(out.points.end(), c.points.begin(), c.points.end());
    }
  }
  return out;
}

PointCloud filter_static(const PointCloud& cloud, const OccupancyGrid& grid, double margin) {
  PointCloud out{cloud.frame, cloud.stamp, {}};
  out.points.reserve(cloud.points.size());
  for (const Vec2& p : cloud.points) {
    if (!grid.near_occupied(p, margin)) {
      out.points.push_back(p);
    }
  }
  return out;
}

PointCloud downsample(const PointCloud& cloud, double min_spacing) {
  if (min_spacing <= 0.0) {
    return cloud;
  }
  // Hash grid with cell size min_spacing: any kept point closer than
  // min_spacing lives in one of the 3x3 neighbouring cells.
  struct KeyHash {
    std::size_t operator()(std::int64_t k) const { return std::hash<std::int64_t>{}(k); }
  };
  std::unordered_map<std::int64_t, std::vector<Vec2>, KeyHash> buckets;
  auto key = [](std::int64_t cx, std::int64_t cy) { return (cx << 32) ^ (cy & 0xffffffff); };

  PointCloud out{cloud.frame, cloud.stamp, {}};
  const double limit2 = min_spacing * min_spacing;
  for (const Vec2& p : cloud.points) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / min_spacing));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / min_spacing));
    bool keep = true;
    for (std::int64_t dx = -1; dx <= 1 && keep; ++dx) {
      for (std::int64_t dy = -1; dy <= 1 && keep; ++dy) {
        auto it = buckets.find(key(cx + dx, cy + dy));
        if (it == buckets.end()) {
          continue;
        }
        for (const Vec2& q : it->second) {
          if ((p - q).squared_norm() < limit2) {
            keep = false;
            break;
          }
        }
      }
    }
    if (keep) {
      out.points.push_back(p);
      buckets[key(cx, cy)].push_back(p);
    }
  }
  return out;
}

PointCloud process_scans(std::span<const LaserScan> scans, std::span<const LidarSpec> lidars,
                         const Pose2& robot_pose, const OccupancyGrid& grid,
                         const FrontendParams& params) {
  if (scans.size() != lidars.size()) {
    throw std::invalid_argument("process_scans: one lidar spec per scan required");
  }
  std::vector<PointCloud> map_clouds;
  map_clouds.reserve(scans.size());
  for (std::size_t i = 0; i < scans.size(); ++i) {
    map_clouds.push_back(
        transform_to_map(sensor_to_robot(polar_to_cartesian(scans[i]), lidars[i].mount), robot_pose));
  }
  PointCloud merged = merge_scans(map_clouds, params.max_stamp_skew);
  if (!grid.empty()) {
    merged = filter_static(merged, grid, params.static_margin);
  }
  return downsample(merged, params.downsample_spacing);
}

}  // namespace motplan
