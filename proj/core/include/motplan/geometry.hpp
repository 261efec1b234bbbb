#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace motplan {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double squared_norm() const { return x * x + y * y; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Planar pose: position in meters, heading in radians.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  constexpr Vec2 position() const { return {x, y}; }
  constexpr bool operator==(const Pose2&) const = default;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

inline Vec2 rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

/// Maps a point from the frame described by `frame` into the parent frame.
inline Vec2 transform_point(const Pose2& frame, Vec2 p) {
  return rotate(p, frame.theta) + frame.position();
}

/// Composes a child pose expressed in `parent` into the parent's parent frame.
Pose2 compose(const Pose2& parent, const Pose2& child);

using Polygon = std::vector<Vec2>;

Polygon transform_polygon(const Pose2& frame, std::span<const Vec2> body);

/// Axis-aligned rectangle centered on the origin.
Polygon make_rectangle(double length, double width);

/// True if the polygon has at least three vertices, is convex and has
/// nonzero area (vertices in either winding order).
bool is_convex_polygon(std::span<const Vec2> polygon);

bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> polygon);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Euclidean distance between two convex polygons; 0 when they overlap or touch.
double convex_polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Ray parameter t >= 0 at which origin + t*dir hits segment [a, b];
/// dir must be unit length for t to be a distance.
std::optional<double> ray_segment_intersection(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b);

/// Nearest ray hit over all edges of a closed polygon.
std::optional<double> ray_polygon_intersection(Vec2 origin, Vec2 dir, std::span<const Vec2> polygon);

/// Largest vertex distance from the origin of the body frame.
double circumradius(std::span<const Vec2> body);

/// Polygon vertices followed by points inserted along each edge so that
/// consecutive samples are at most `spacing` apart. spacing <= 0 returns the
/// vertices unchanged.
std::vector<Vec2> densify_polygon(std::span<const Vec2> polygon, double spacing);

}  // namespace motplan
