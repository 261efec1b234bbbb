#pragma once

// Slow reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "motplan/association.hpp"
#include "motplan/geometry.hpp"

namespace motplan::oracle {

struct BruteMatch {
  std::size_t count = 0;
  double cost = std::numeric_limits<double>::infinity();
  std::vector<MatchPair> pairs;
};

/// Tries every injection of rows into columns (square or rows <= cols).
/// Maximizes the number of finite pairs, then minimizes the cost summed in
/// row order.
inline BruteMatch brute_force_assignment(const CostMatrix& cost) {
  const std::size_t n = std::max(cost.rows(), cost.cols());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BruteMatch best;
  best.count = 0;
  bool first = true;
  do {
    std::size_t count = 0;
    double total = 0.0;
    std::vector<MatchPair> pairs;
    for (std::size_t r = 0; r < cost.rows(); ++r) {
      const std::size_t c = perm[r];
      if (c < cost.cols() && std::isfinite(cost(r, c))) {
        ++count;
        total += cost(r, c);
        pairs.emplace_back(r, c);
      }
    }
    if (first || count > best.count || (count == best.count && total < best.cost)) {
      best = {count, total, pairs};
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Union-find over core points (neighbourhood, self included, of at least k
/// points within d). A non-core point joins the adjacent core component
/// whose smallest core index is lowest, provided that index precedes it.
inline std::vector<std::vector<std::size_t>> connected_components_clusters(const std::vector<Vec2>& pts,
                                                                          std::size_t k, double d) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      if (dx * dx + dy * dy <= d * d) {
        adj[i].push_back(j);
      }
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) {
    core[i] = adj[i].size() >= k;
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    for (std::size_t j : adj[i]) {
      if (core[j]) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // With min-index roots the root is the smallest core index of the component.
  std::vector<std::size_t> label(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) {
      label[i] = find(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i]) continue;
    std::size_t best = n;
    for (std::size_t j : adj[i]) {
      if (core[j]) best = std::min(best, label[j]);
    }
    if (best < i) label[i] = best;
  }
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] == root) members.push_back(i);
    }
    if (!members.empty() && members.size() >= k) {
      clusters.push_back(std::move(members));
    }
  }
  return clusters;
}

/// Linear Kalman filter on (x, y, vx, vy) with position-only process noise
/// and position measurements.
struct KalmanFilter {
  Eigen::Vector4d x;
  Eigen::Matrix4d P;
  double dt = 0.1;
  double q = 0.0;  // position process sigma per step
  Eigen::Matrix2d R;

  void predict() {
    Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
    F(0, 2) = dt;
    F(1, 3) = dt;
    Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
    Q(0, 0) = Q(1, 1) = q * q;
    x = F * x;
    P = F * P * F.transpose() + Q;
  }

  void update(const Eigen::Vector2d& z) {
    Eigen::Matrix<double, 2, 4> H = Eigen::Matrix<double, 2, 4>::Zero();
    H(0, 0) = H(1, 1) = 1.0;
    const Eigen::Matrix2d S = H * P * H.transpose() + R;
    const Eigen::Matrix<double, 4, 2> K = P * H.transpose() * S.inverse();
    x += K * (z - H * x);
    P = (Eigen::Matrix4d::Identity() - K * H) * P;
  }
};

}  // namespace motplan::oracle
