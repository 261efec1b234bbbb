#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "motplan/geometry.hpp"
#include "motplan/kdtree.hpp"
#include "motplan/scan_frontend.hpp"

namespace motplan {

struct ClusterParams {
  std::size_t min_points = 3;       // k
  double distance_threshold = 0.35; // m
};

/// Extreme-point summary of one cluster: bounding-box center, extents and
/// the radius reaching the box corners.
struct ObjectObservation {
  Vec2 center;
  double width = 0.0;
  double height = 0.0;
  double radius = 0.0;
  std::size_t point_count = 0;
  double stamp = 0.0;
};

KdTree2 build_spatial_index(std::span<const Vec2> points);

/// k-d-tree Euclidean clustering. Points are seeded in input order; a point
/// joins the cluster of the first reached neighbour and only expands the
/// cluster further when its own neighbourhood (itself included) holds at
/// least min_points members. Clusters smaller than min_points are dropped.
/// Each cluster lists its point indices in ascending order; clusters are
/// ordered by their smallest index.
std::vector<std::vector<std::size_t>> euclidean_cluster(std::span<const Vec2> points,
                                                        std::size_t min_points,
                                                        double distance_threshold);

/// Throws std::invalid_argument on an empty cluster.
ObjectObservation summarize(std::span<const Vec2> cluster_points, double stamp = 0.0);

/// Clusters a map-frame cloud and summarizes every cluster.
std::vector<ObjectObservation> detect_objects(const PointCloud& cloud, const ClusterParams& params);

}  // namespace motplan
