#include "motplan/kinematics.hpp"

#include <algorithm>
#include <stdexcept>

namespace motplan {

namespace {

bool all_finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

RobotState step_tricycle(const RobotState& state, TricycleCommand cmd, double dt,
                         const TricycleParams& params) {
  if (!all_finite({state.x, state.y, state.theta, state.psi, state.v_s, cmd.v_s, cmd.psi, dt,
                   params.wheelbase, params.offset_a, params.psi_max})) {
    throw std::invalid_argument("step_tricycle: non-finite input");
  }
  if (dt <= 0.0) {
    throw std::invalid_argument("step_tricycle: dt must be positive");
  }
  if (params.wheelbase <= 0.0) {
    throw std::invalid_argument("step_tricycle: wheelbase must be positive");
  }

  const double psi = std::clamp(cmd.psi, -params.psi_max, params.psi_max);
  const double c_psi = std::cos(psi);
  const double s_psi = std::sin(psi);
  // Robot-frame forward speed; reduces to v_s*cos(psi) for A = 0.
  const double forward = (c_psi - params.offset_a * s_psi / params.wheelbase) * cmd.v_s;
  const double omega = cmd.v_s * s_psi / params.wheelbase;

  RobotState next = state;
  next.x += forward * std::cos(state.theta) * dt;
  next.y += forward * std::sin(state.theta) * dt;
  next.theta = normalize_angle(state.theta + omega * dt);
  next.psi = psi;
  next.v_s = cmd.v_s;
  return next;
}

Pose2 step_unicycle(const Pose2& pose, UnicycleCommand cmd, double dt) {
  if (!all_finite({pose.x, pose.y, pose.theta, cmd.v, cmd.omega, dt})) {
    throw std::invalid_argument("step_unicycle: non-finite input");
  }
  return {pose.x + cmd.v * std::cos(pose.theta) * dt, pose.y + cmd.v * std::sin(pose.theta) * dt,
          normalize_angle(pose.theta + cmd.omega * dt)};
}

TricycleCommand to_tricycle_command(UnicycleCommand cmd, const TricycleParams& params) {
  const double lateral = cmd.omega * params.wheelbase;
  const double speed = std::hypot(cmd.v, lateral);
  if (speed == 0.0) {
    return {0.0, 0.0};
  }
  if (cmd.v >= 0.0) {
    return {speed, std::atan2(lateral, cmd.v)};
  }
  return {-speed, std::atan2(-lateral, -cmd.v)};
}

}  // namespace motplan
