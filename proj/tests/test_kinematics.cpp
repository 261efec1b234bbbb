#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "motplan/kinematics.hpp"

namespace motplan {
namespace {

TEST(Tricycle, StraightLineAdvancesAlongHeading) {
  const RobotState s{0.0, 0.0, std::numbers::pi / 4.0, 0.0, 0.0};
  const RobotState n = step_tricycle(s, {1.0, 0.0}, 0.5, {});
  EXPECT_NEAR(n.x, 0.5 * std::cos(std::numbers::pi / 4.0), 1e-12);
  EXPECT_NEAR(n.y, 0.5 * std::sin(std::numbers::pi / 4.0), 1e-12);
  EXPECT_NEAR(n.theta, std::numbers::pi / 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(n.v_s, 1.0);
}

TEST(Tricycle, SteeringMatchesHandComputedStep) {
  const TricycleParams p{1.2, 0.0, 1.0};
  const RobotState n = step_tricycle({}, {0.8, 0.4}, 0.1, p);
  EXPECT_NEAR(n.x, 0.8 * std::cos(0.4) * 0.1, 1e-12);
  EXPECT_NEAR(n.y, 0.0, 1e-12);
  EXPECT_NEAR(n.theta, 0.8 * std::sin(0.4) / 1.2 * 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(n.psi, 0.4);
}

TEST(Tricycle, OffsetEntersForwardSpeed) {
  const TricycleParams p{1.0, 0.5, 1.2};
  const RobotState n = step_tricycle({}, {1.0, 0.3}, 1.0, p);
  EXPECT_NEAR(n.x, std::cos(0.3) - 0.5 * std::sin(0.3), 1e-12);
}

TEST(Tricycle, SteeringIsClamped) {
  const TricycleParams p{1.0, 0.0, 0.5};
  const RobotState n = step_tricycle({}, {1.0, 2.0}, 0.1, p);
  EXPECT_DOUBLE_EQ(n.psi, 0.5);
  const RobotState m = step_tricycle({}, {1.0, -2.0}, 0.1, p);
  EXPECT_DOUBLE_EQ(m.psi, -0.5);
}

TEST(Tricycle, HeadingStaysNormalized) {
  RobotState s{0.0, 0.0, 3.1, 0.0, 0.0};
  for (int i = 0; i < 100; ++i) {
    s = step_tricycle(s, {1.0, 1.0}, 0.1, {});
    ASSERT_GT(s.theta, -std::numbers::pi);
    ASSERT_LE(s.theta, std::numbers::pi);
  }
}

TEST(Tricycle, RejectsBadInput) {
  EXPECT_THROW(step_tricycle({}, {NAN, 0.0}, 0.1, {}), std::invalid_argument);
  EXPECT_THROW(step_tricycle({}, {1.0, 0.0}, 0.0, {}), std::invalid_argument);
  EXPECT_THROW(step_tricycle({}, {1.0, 0.0}, 0.1, {0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(Unicycle, EulerStep) {
  const Pose2 n = step_unicycle({1.0, 1.0, 0.0}, {2.0, 0.5}, 0.1);
  EXPECT_NEAR(n.x, 1.2, 1e-12);
  EXPECT_NEAR(n.y, 1.0, 1e-12);
  EXPECT_NEAR(n.theta, 0.05, 1e-12);
  EXPECT_THROW(step_unicycle({}, {INFINITY, 0.0}, 0.1), std::invalid_argument);
}

TEST(Conversion, TricycleCommandRealizesUnicycleVelocity) {
  const TricycleParams p{1.0, 0.0, 1.5};
  for (const UnicycleCommand cmd : {UnicycleCommand{0.6, 0.3}, UnicycleCommand{-0.3, 0.2},
                                    UnicycleCommand{0.5, -0.4}, UnicycleCommand{-0.2, -0.1}}) {
    const TricycleCommand tc = to_tricycle_command(cmd, p);
    EXPECT_NEAR(tc.v_s * std::cos(tc.psi), cmd.v, 1e-12);
    EXPECT_NEAR(tc.v_s * std::sin(tc.psi) / p.wheelbase, cmd.omega, 1e-12);
  }
  const TricycleCommand stop = to_tricycle_command({0.0, 0.0}, p);
  EXPECT_EQ(stop.v_s, 0.0);
  EXPECT_EQ(stop.psi, 0.0);
}

}  // namespace
}  // namespace motplan
