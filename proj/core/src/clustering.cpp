#include "motplan/clustering.hpp"

#include <algorithm>
#include <stdexcept>

namespace motplan {

KdTree2 build_spatial_index(std::span<const Vec2> points) { return KdTree2(points); }

std::vector<std::vector<std::size_t>> euclidean_cluster(std::span<const Vec2> points,
                                                        std::size_t min_points,
                                                        double distance_threshold) {
  if (!(distance_threshold > 0.0)) {
    throw std::invalid_argument("euclidean_cluster: distance threshold must be positive");
  }
  if (min_points < 1) {
    throw std::invalid_argument("euclidean_cluster: min_points must be >= 1");
  }
  std::vector<std::vector<std::size_t>> clusters;
  if (points.empty()) {
    return clusters;
  }

  const KdTree2 tree = build_spatial_index(points);
  std::vector<char> visited(points.size(), 0);
  std::vector<std::size_t> frontier;
  std::vector<std::size_t> neighbors;

  for (std::size_t seed = 0; seed < points.size(); ++seed) {
    if (visited[seed]) {
      continue;
    }
    std::vector<std::size_t> cluster{seed};
    visited[seed] = 1;
    frontier.assign(1, seed);
    while (!frontier.empty()) {
      const std::size_t p = frontier.back();
      frontier.pop_back();
      tree.radius_search(points[p], distance_threshold, neighbors);
      if (neighbors.size() < min_points) {
        continue;
      }
      for (std::size_t q : neighbors) {
        if (!visited[q]) {
          visited[q] = 1;
          cluster.push_back(q);
          frontier.push_back(q);
        }
      }
    }
    if (cluster.size() >= min_points) {
      std::sort(cluster.begin(), cluster.end());
      clusters.push_back(std::move(cluster));
    }
  }
  return clusters;
}

ObjectObservation summarize(std::span<const Vec2> cluster_points, double stamp) {
  if (cluster_points.empty()) {
    throw std::invalid_argument("summarize: empty cluster");
  }
  double x_min = cluster_points.front().x, x_max = x_min;
  double y_min = cluster_points.front().y, y_max = y_min;
  for (const Vec2& p : cluster_points) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  ObjectObservation obs;
  obs.center = {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0};
  obs.width = x_max - x_min;
  obs.height = y_max - y_min;
  obs.radius = std::sqrt(obs.width * obs.width + obs.height * obs.height) / 2.0;
  obs.point_count = cluster_points.size();
  obs.stamp = stamp;
  return obs;
}

std::vector<ObjectObservation> detect_objects(const PointCloud& cloud, const ClusterParams& params) {
  const auto clusters = euclidean_cluster(cloud.points, params.min_points, params.distance_threshold);
  std::vector<ObjectObservation> out;
  out.reserve(clusters.size());
  std::vector<Vec2> members;
  for (const auto& cluster : clusters) {
    members.clear();
    for (std::size_t idx : cluster) {
      members.push_back(cloud.points[idx]);
    }
    out.push_back(summarize(members, cloud.stamp));
  }
  return out;
}

}  // namespace motplan
