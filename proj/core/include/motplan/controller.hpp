#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "motplan/geometry.hpp"
#include "motplan/kinematics.hpp"
#include "motplan/tracking.hpp"

namespace motplan {

enum class ObstacleCostMode {
  projected,  // obstacles advanced along their velocity
  ttc,        // distance + time-to-collision baseline
  static_,    // obstacles frozen at their current position
};

ObstacleCostMode parse_obstacle_cost_mode(std::string_view name);
std::string_view to_string(ObstacleCostMode mode);

struct ControllerConfig {
  double v_min = -0.3;
  double v_max = 1.0;
  double omega_max = 1.0;
  double accel_v = 0.5;
  double accel_omega = 2.0;
  int n_v = 11;
  int n_omega = 21;
  double horizon = 3.0;  // s
  double dt = 0.1;       // s; rollout step and control period
  int skip_n = 2;
  Polygon footprint = make_rectangle(1.4, 0.8);
  /// Extra footprint samples along each edge, at most this far apart; 0 uses
  /// the vertices only.
  double footprint_sample_spacing = 0.0;
  double obstacle_margin = 0.3;
  double w_obstacle = 1.0;
  double w_speed = 0.3;
  double w_goal = 0.8;
  double reverse_penalty = 0.5;
  bool squared_costs = false;
  /// Advance obstacles by dt*ii instead of skip_n*dt*ii.
  bool physical_projection = false;
  /// Subtract each obstacle's radius from its distance before the margin test.
  bool fold_obstacle_radius = false;
  double ttc_epsilon = 1e-3;

  /// Throws std::invalid_argument on inconsistent limits.
  void validate() const;
  std::size_t trajectory_length() const;
  std::vector<Vec2> footprint_points() const;
};

struct Trajectory {
  std::vector<Pose2> poses;  // t = i*dt, i = 0..T/dt
  UnicycleCommand command;
};

std::vector<UnicycleCommand> admissible_window(UnicycleCommand current, const ControllerConfig& cfg);

Trajectory simulate_trajectory(const Pose2& pose, UnicycleCommand cmd, const ControllerConfig& cfg);

/// Minimum distance between footprint samples and obstacles projected
/// forward along their velocities, over every skip_n-th pose; +inf if it
/// falls within the margin, else its reciprocal.
double obstacle_cost(const Trajectory& traj, std::span<const Obstacle> obstacles, const ControllerConfig& cfg);

/// Same as obstacle_cost with every obstacle velocity taken as zero.
double obstacle_cost_static(const Trajectory& traj, std::span<const Obstacle> obstacles,
                            const ControllerConfig& cfg);

/// Sum over trajectory points and obstacles of 1/(d + TTC + eps), with d the
/// radius-reduced center distance clamped at 0 and TTC = d/(|v_r - v_o| + eps).
double obstacle_cost_ttc(const Trajectory& traj, std::span<const Obstacle> obstacles, double ego_v,
                         const ControllerConfig& cfg);

double speed_cost(double v, const ControllerConfig& cfg);
double goal_cost(const Trajectory& traj, Vec2 goal);

struct CandidateScore {
  UnicycleCommand command;
  double obstacle = 0.0;
  double speed = 0.0;
  double goal = 0.0;
  double total = 0.0;
  bool feasible = true;
};

struct PlanResult {
  UnicycleCommand command;
  Trajectory trajectory;
  bool no_feasible_trajectory = false;
  CandidateScore best;
  std::vector<CandidateScore> candidates;
  std::size_t infeasible_count = 0;
  double duration_ms = 0.0;
};

/// Scores every admissible (v, omega) with
/// w_o*obstacle + w_v*speed + w_g*goal and returns the lowest finite total;
/// the first candidate in sample order wins ties. When every candidate is
/// infeasible the command is (0, 0) and no_feasible_trajectory is set.
PlanResult plan(const Pose2& pose, UnicycleCommand current, Vec2 goal, std::span<const Obstacle> obstacles,
                const ControllerConfig& cfg, ObstacleCostMode mode = ObstacleCostMode::projected);

}  // namespace motplan
