#pragma once

#include "motplan/geometry.hpp"

namespace motplan {

/// Ego state for the front-wheel-driven, front-steered tricycle.
/// theta is kept in (-pi, pi]; psi is the steering angle; v_s the traction
/// wheel's linear speed.
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double psi = 0.0;
  double v_s = 0.0;

  constexpr Pose2 pose() const { return {x, y, theta}; }
};

struct TricycleParams {
  double wheelbase = 1.0;  // L
  /// Offset A in the robot-frame speed term (cos(psi) - A*sin(psi)/L); used verbatim.
  double offset_a = 0.0;
  double psi_max = 1.2;
};

struct TricycleCommand {
  double v_s = 0.0;
  double psi = 0.0;
};

/// Linear and angular velocity command; what the controller samples.
struct UnicycleCommand {
  double v = 0.0;
  double omega = 0.0;

  constexpr bool operator==(const UnicycleCommand&) const = default;
};

/// One explicit-Euler step of the tricycle model. The commanded steering
/// angle is clamped to +-psi_max. Throws std::invalid_argument on non-finite
/// input, dt <= 0 or wheelbase <= 0.
RobotState step_tricycle(const RobotState& state, TricycleCommand cmd, double dt,
                         const TricycleParams& params);

/// One explicit-Euler step of the unicycle model.
Pose2 step_unicycle(const Pose2& pose, UnicycleCommand cmd, double dt);

/// Tricycle command that realizes (v, omega) when A = 0 and the steering
/// limit is not active.
TricycleCommand to_tricycle_command(UnicycleCommand cmd, const TricycleParams& params);

}  // namespace motplan
