#include "motplan/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace motplan {

KdTree2::KdTree2(std::span<const Vec2> points, std::size_t leaf_size)
    : points_(points.begin(), points.end()), order_(points.size()), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / leaf_size_ + 1);
    build(0, points_.size());
  }
}

std::size_t KdTree2::build(std::size_t begin, std::size_t end) {
  const std::size_t id = nodes_.size();
  nodes_.push_back({begin, end, -1, 0.0, 0, 0});
  if (end - begin <= leaf_size_) {
    return id;
  }

  // Split on the wider extent of this node's bounding box.
  double min_x = points_[order_[begin]].x, max_x = min_x;
  double min_y = points_[order_[begin]].y, max_y = min_y;
  for (std::size_t i = begin; i < end; ++i) {
    const Vec2& p = points_[order_[i]];
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int axis = (max_x - min_x) >= (max_y - min_y) ? 0 : 1;

  const std::size_t mid = begin + (end - begin) / 2;
  auto coord = [this, axis](std::size_t idx) { return axis == 0 ? points_[idx].x : points_[idx].y; };
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return coord(a) < coord(b); });

  const double split = coord(order_[mid]);
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree2::search(std::size_t node_id, Vec2 query, double radius2, std::vector<std::size_t>& out) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      if ((points_[order_[i]] - query).squared_norm() <= radius2) {
        out.push_back(order_[i]);
      }
    }
    return;
  }
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double diff = (node.axis == 0 ? query.x : query.y) - node.split;
  if (diff <= 0.0) {
    search(node.left, query, radius2, out);
    if (diff * diff <= radius2) {
      search(node.right, query, radius2, out);
    }
  } else {
    search(node.right, query, radius2, out);
    if (diff * diff <= radius2) {
      search(node.left, query, radius2, out);
    }
  }
}

void KdTree2::radius_search(Vec2 query, double radius, std::vector<std::size_t>& out) const {
  out.clear();
  if (nodes_.empty() || radius < 0.0) {
    return;
  }
  search(0, query, radius * radius, out);
  std::sort(out.begin(), out.end());
}

std::vector<std::size_t> KdTree2::radius_search(Vec2 query, double radius) const {
  std::vector<std::size_t> out;
  radius_search(query, radius, out);
  return out;
}

}  // namespace motplan
