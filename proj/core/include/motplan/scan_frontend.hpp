#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "motplan/geometry.hpp"
#include "motplan/sim_world.hpp"

namespace motplan {

enum class Frame { sensor, robot, map };

struct PointCloud {
  Frame frame = Frame::sensor;
  double stamp = 0.0;
  std::vector<Vec2> points;
};

struct FrontendParams {
  double max_stamp_skew = 0.05;     // s
  double static_margin = 0.1;       // m
  double downsample_spacing = 0.03; // m, 0 disables thinning
};

/// x = r cos(bearing), y = r sin(bearing) for every valid beam.
PointCloud polar_to_cartesian(std::span<const double> ranges, std::span<const double> bearings,
                              std::span<const std::uint8_t> valid, double stamp);
PointCloud polar_to_cartesian(const LaserScan& scan);

/// Applies the sensor's mount pose. Throws std::invalid_argument unless the
/// cloud is in the sensor frame.
PointCloud sensor_to_robot(const PointCloud& cloud, const Pose2& mount);

/// Rotates by the robot heading, then translates by the robot position.
/// Throws std::invalid_argument unless the cloud is in the robot frame.
PointCloud transform_to_map(const PointCloud& cloud, const Pose2& robot_pose);

/// Concatenates the map-frame clouds whose stamps are within max_stamp_skew
/// of the newest one, in input order. The result carries the newest stamp.
PointCloud merge_scans(std::span<const PointCloud> clouds, double max_stamp_skew);

/// Drops points within `margin` of an occupied map cell.
PointCloud filter_static(const PointCloud& cloud, const OccupancyGrid& grid, double margin);

/// Greedy, order-stable thinning: a point survives if it is at least
/// min_spacing away from every point kept before it.
PointCloud downsample(const PointCloud& cloud, double min_spacing);

/// Scans from every lidar on one robot, all the way to a filtered map-frame cloud.
PointCloud process_scans(std::span<const LaserScan> scans, std::span<const LidarSpec> lidars,
                         const Pose2& robot_pose, const OccupancyGrid& grid,
                         const FrontendParams& params);

}  // namespace motplan
