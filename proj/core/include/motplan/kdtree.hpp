#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "motplan/geometry.hpp"

namespace motplan {

/// Static 2-d tree over a point set; read-only after construction.
class KdTree2 {
 public:
  explicit KdTree2(std::span<const Vec2> points, std::size_t leaf_size = 8);

  std::size_t size() const { return points_.size(); }

  /// Indices of all points within `radius` (inclusive) of `query`, ascending.
  std::vector<std::size_t> radius_search(Vec2 query, double radius) const;
  void radius_search(Vec2 query, double radius, std::vector<std::size_t>& out) const;

 private:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int axis = -1;  // -1 marks a leaf
    double split = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  void search(std::size_t node, Vec2 query, double radius2, std::vector<std::size_t>& out) const;

  std::vector<Vec2> points_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::size_t leaf_size_;
};

}  // namespace motplan
