#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "motplan/geometry.hpp"

namespace motplan {
namespace {

TEST(NormalizeAngle, WrapsIntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(normalize_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(normalize_angle(-std::numbers::pi), std::numbers::pi, 1e-12);
  EXPECT_NEAR(normalize_angle(3.0 * std::numbers::pi), std::numbers::pi, 1e-12);
  EXPECT_NEAR(normalize_angle(7.0), 7.0 - 2.0 * std::numbers::pi, 1e-12);
}

TEST(Transform, RotatesThenTranslates) {
  const Pose2 frame{1.0, 2.0, std::numbers::pi / 2.0};
  const Vec2 p = transform_point(frame, {1.0, 0.0});
  EXPECT_NEAR(p.x, 1.0, 1e-12);
  EXPECT_NEAR(p.y, 3.0, 1e-12);
}

TEST(Transform, ComposeMatchesSequentialTransforms) {
  const Pose2 a{1.0, -2.0, 0.7};
  const Pose2 b{0.5, 0.25, -1.9};
  const Vec2 q{0.3, -0.8};
  const Vec2 direct = transform_point(compose(a, b), q);
  const Vec2 chained = transform_point(a, transform_point(b, q));
  EXPECT_NEAR(direct.x, chained.x, 1e-12);
  EXPECT_NEAR(direct.y, chained.y, 1e-12);
}

TEST(Transform, IsometryPreservesPairwiseDistances) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pose2 frame{u(rng), u(rng), ang(rng)};
    const Vec2 a{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    const double before = distance(a, b);
    const double after = distance(transform_point(frame, a), transform_point(frame, b));
    ASSERT_NEAR(before, after, 1e-9);
  }
}

TEST(Polygon, RectangleIsConvexCenteredBox) {
  const Polygon r = make_rectangle(1.4, 0.8);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_TRUE(is_convex_polygon(r));
  EXPECT_NEAR(circumradius(r), std::hypot(0.7, 0.4), 1e-12);
  EXPECT_TRUE(point_in_convex_polygon({0.69, 0.39}, r));
  EXPECT_FALSE(point_in_convex_polygon({0.71, 0.0}, r));
}

TEST(Polygon, ConvexityRejectsDegenerateShapes) {
  EXPECT_FALSE(is_convex_polygon(Polygon{{0, 0}, {1, 0}}));
  EXPECT_FALSE(is_convex_polygon(Polygon{{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_FALSE(is_convex_polygon(Polygon{{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}));
  EXPECT_TRUE(is_convex_polygon(Polygon{{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
}

TEST(Polygon, DistanceBetweenSeparatedAndOverlappingBoxes) {
  const Polygon a = make_rectangle(1.0, 1.0);
  const Polygon b = transform_polygon({3.0, 0.0, 0.0}, make_rectangle(1.0, 1.0));
  EXPECT_NEAR(convex_polygon_distance(a, b), 2.0, 1e-12);
  const Polygon c = transform_polygon({0.5, 0.5, 0.3}, make_rectangle(1.0, 1.0));
  EXPECT_EQ(convex_polygon_distance(a, c), 0.0);
  const Polygon inner = make_rectangle(0.2, 0.2);
  EXPECT_EQ(convex_polygon_distance(a, inner), 0.0);
}

TEST(Polygon, DistanceAtCornerIsEuclidean) {
  const Polygon a = make_rectangle(2.0, 2.0);
  const Polygon b = transform_polygon({4.0, 5.0, 0.0}, make_rectangle(2.0, 2.0));
  EXPECT_NEAR(convex_polygon_distance(a, b), std::hypot(2.0, 3.0), 1e-12);
}

TEST(Ray, HitsSegmentAndPolygon) {
  const auto t = ray_segment_intersection({0, 0}, {1, 0}, {2, -1}, {2, 1});
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 2.0, 1e-12);
  EXPECT_FALSE(ray_segment_intersection({0, 0}, {-1, 0}, {2, -1}, {2, 1}).has_value());
  const Polygon box = transform_polygon({5.0, 0.0, 0.0}, make_rectangle(2.0, 2.0));
  const auto hit = ray_polygon_intersection({0, 0}, {1, 0}, box);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(*hit, 4.0, 1e-12);
  EXPECT_FALSE(ray_polygon_intersection({0, 0}, {0, 1}, box).has_value());
}

TEST(Polygon, DensifyBoundsSpacingAndKeepsVertices) {
  const Polygon r = make_rectangle(1.4, 0.8);
  const auto pts = densify_polygon(r, 0.2);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_EQ(pts[i], r[i]);
  }
  // 1.4 m edges split into 7 pieces, 0.8 m edges into 4.
  EXPECT_EQ(pts.size(), 4u + 2u * 6u + 2u * 3u);
  for (const Vec2& p : pts) {
    double best = 1e9;
    for (const Vec2& q : pts) {
      if (!(p == q)) best = std::min(best, distance(p, q));
    }
    EXPECT_LE(best, 0.2 + 1e-12);
  }
  EXPECT_EQ(densify_polygon(r, 0.0).size(), 4u);
}

}  // namespace
}  // namespace motplan
