#include "motplan/geometry.hpp"

#include <algorithm>
#include <limits>

namespace motplan {

double normalize_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

Pose2 compose(const Pose2& parent, const Pose2& child) {
  const Vec2 p = transform_point(parent, child.position());
  return {p.x, p.y, normalize_angle(parent.theta + child.theta)};
}

Polygon transform_polygon(const Pose2& frame, std::span<const Vec2> body) {
  Polygon out;
  out.reserve(body.size());
  const double c = std::cos(frame.theta);
  const double s = std::sin(frame.theta);
  for (const Vec2& v : body) {
    out.push_back({frame.x + c * v.x - s * v.y, frame.y + s * v.x + c * v.y});
  }
  return out;
}

Polygon make_rectangle(double length, double width) {
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  return {{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}};
}

bool is_convex_polygon(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  int sign = 0;
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const Vec2 c = polygon[(i + 2) % n];
    area2 += cross(a, b);
    const double turn = cross(b - a, c - b);
    if (std::abs(turn) < 1e-12) {
      continue;
    }
    const int s = turn > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return sign != 0 && std::abs(area2) > 1e-12;
}

bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) {
    return false;
  }
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double c = cross(b - a, p - a);
    if (c == 0.0) {
      continue;
    }
    const int s = c > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

}  // namespace

double convex_polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  if (point_in_convex_polygon(a.front(), b) || point_in_convex_polygon(b.front(), a)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2 a0 = a[i];
    const Vec2 a1 = a[(i + 1) % a.size()];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Vec2 b0 = b[j];
      const Vec2 b1 = b[(j + 1) % b.size()];
      if (segments_intersect(a0, a1, b0, b1)) {
        return 0.0;
      }
      best = std::min({best, point_segment_distance(a0, b0, b1), point_segment_distance(b0, a0, a1)});
    }
  }
  return best;
}

std::optional<double> ray_segment_intersection(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b) {
  const Vec2 edge = b - a;
  const double denom = cross(dir, edge);
  if (std::abs(denom) < 1e-15) {
    return std::nullopt;
  }
  const Vec2 ao = a - origin;
  const double t = cross(ao, edge) / denom;
  const double u = cross(ao, dir) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) {
    return std::nullopt;
  }
  return t;
}

std::optional<double> ray_polygon_intersection(Vec2 origin, Vec2 dir, std::span<const Vec2> polygon) {
  std::optional<double> best;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto t = ray_segment_intersection(origin, dir, polygon[i], polygon[(i + 1) % polygon.size()]);
    if (t && (!best || *t < *best)) {
      best = t;
    }
  }
  return best;
}

double circumradius(std::span<const Vec2> body) {
  double r = 0.0;
  for (const Vec2& v : body) {
    r = std::max(r, v.norm());
  }
  return r;
}

std::vector<Vec2> densify_polygon(std::span<const Vec2> polygon, double spacing) {
  std::vector<Vec2> out(polygon.begin(), polygon.end());
  if (spacing <= 0.0 || polygon.size() < 2) {
    return out;
  }
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % polygon.size()];
    const int segments = static_cast<int>(std::ceil(distance(a, b) / spacing));
    for (int k = 1; k < segments; ++k) {
      out.push_back(a + (b - a) * (static_cast<double>(k) / segments));
    }
  }
  return out;
}

}  // namespace motplan
