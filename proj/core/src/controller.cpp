#include "motplan/controller.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace motplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

/// Shared core of the projected, physical and static variants: the obstacle
/// at trajectory index ii sits at (o + v * time_scale * ii).
double projected_clearance_cost(const Trajectory& traj, std::span<const Obstacle> obstacles,
                                std::span<const Vec2> footprint, const ControllerConfig& cfg,
                                double time_scale) {
  double min_dist = kInf;
  const std::size_t step = static_cast<std::size_t>(cfg.skip_n);
  for (std::size_t ii = 0; ii < traj.poses.size(); ii += step) {
    const Pose2& pose = traj.poses[ii];
    const double c = std::cos(pose.theta);
    const double s = std::sin(pose.theta);
    const double ahead = time_scale * static_cast<double>(ii);
    for (const Obstacle& ob : obstacles) {
      const double ox = ob.x + ob.vx * ahead;
      const double oy = ob.y + ob.vy * ahead;
      const double shrink = cfg.fold_obstacle_radius ? ob.radius : 0.0;
      for (const Vec2& f : footprint) {
        const double px = pose.x + f.x * c - f.y * s;
        const double py = pose.y + f.x * s + f.y * c;
        const double dx = px - ox;
        const double dy = py - oy;
        const double dist = std::sqrt(dx * dx + dy * dy) - shrink;
        if (dist < min_dist) {
          min_dist = dist;
          if (min_dist <= cfg.obstacle_margin) {
            return kInf;  // collision course
          }
        }
      }
    }
  }
  if (min_dist <= cfg.obstacle_margin) {
    return kInf;
  }
  return 1.0 / min_dist;
}

double ttc_cost(const Trajectory& traj, std::span<const Obstacle> obstacles, double ego_v, double robot_radius,
                const ControllerConfig& cfg) {
  const double eps = cfg.ttc_epsilon;
  double total = 0.0;
  for (const Pose2& pose : traj.poses) {
    const Vec2 ego_vel{ego_v * std::cos(pose.theta), ego_v * std::sin(pose.theta)};
    for (const Obstacle& ob : obstacles) {
      const double d = std::max(0.0, distance(pose.position(), {ob.x, ob.y}) - robot_radius - ob.radius);
      const double closing = (ego_vel - Vec2{ob.vx, ob.vy}).norm();
      const double ttc = d / (closing + eps);
      total += 1.0 / (d + ttc + eps);
    }
  }
  return total;
}

}  // namespace

ObstacleCostMode parse_obstacle_cost_mode(std::string_view name) {
  if (name == "projected") return ObstacleCostMode::projected;
  if (name == "ttc") return ObstacleCostMode::ttc;
  if (name == "static") return ObstacleCostMode::static_;
  throw std::invalid_argument("unknown obstacle cost '" + std::string(name) +
                              "' (expected projected|ttc|static)");
}

std::string_view to_string(ObstacleCostMode mode) {
  switch (mode) {
    case ObstacleCostMode::projected: return "projected";
    case ObstacleCostMode::ttc: return "ttc";
    case ObstacleCostMode::static_: return "static";
  }
  return "projected";
}

void ControllerConfig::validate() const {
  if (!(v_min <= 0.0 && 0.0 <= v_max)) {
    throw std::invalid_argument("controller: require v_min <= 0 <= v_max");
  }
  if (!(omega_max >= 0.0) || !(accel_v >= 0.0) || !(accel_omega >= 0.0)) {
    throw std::invalid_argument("controller: omega_max and accelerations must be non-negative");
  }
  if (n_v < 2 || n_omega < 2) {
    throw std::invalid_argument("controller: n_v and n_omega must be >= 2");
  }
  if (skip_n < 1) {
    throw std::invalid_argument("controller: skip_n must be >= 1");
  }
  if (!(obstacle_margin > 0.0)) {
    throw std::invalid_argument("controller: obstacle_margin must be positive");
  }
  if (!(dt > 0.0) || !(horizon >= 0.0)) {
    throw std::invalid_argument("controller: dt must be positive and horizon non-negative");
  }
  if (footprint.empty()) {
    throw std::invalid_argument("controller: footprint needs at least one point");
  }
  if (!(reverse_penalty >= 0.0) || !(ttc_epsilon > 0.0)) {
    throw std::invalid_argument("controller: reverse_penalty must be >= 0 and ttc_epsilon > 0");
  }
}

std::size_t ControllerConfig::trajectory_length() const {
  return static_cast<std::size_t>(std::llround(horizon / dt)) + 1;
}

std::vector<Vec2> ControllerConfig::footprint_points() const {
  return densify_polygon(footprint, footprint.size() >= 2 ? footprint_sample_spacing : 0.0);
}

std::vector<UnicycleCommand> admissible_window(UnicycleCommand current, const ControllerConfig& cfg) {
  const double v_lo = std::max(cfg.v_min, current.v - cfg.accel_v * cfg.dt);
  const double v_hi = std::min(cfg.v_max, current.v + cfg.accel_v * cfg.dt);
  const double w_lo = std::max(-cfg.omega_max, current.omega - cfg.accel_omega * cfg.dt);
  const double w_hi = std::min(cfg.omega_max, current.omega + cfg.accel_omega * cfg.dt);
  // A current command outside the limits collapses that axis onto the
  // nearest reachable bound.
  const auto vs = linspace(v_lo, std::max(v_lo, v_hi), cfg.n_v);
  const auto ws = linspace(w_lo, std::max(w_lo, w_hi), cfg.n_omega);
  std::vector<UnicycleCommand> out;
  out.reserve(vs.size() * ws.size());
  for (double v : vs) {
    for (double w : ws) {
      out.push_back({v, w});
    }
  }
  return out;
}

Trajectory simulate_trajectory(const Pose2& pose, UnicycleCommand cmd, const ControllerConfig& cfg) {
  Trajectory traj;
  traj.command = cmd;
  const std::size_t n = cfg.trajectory_length();
  traj.poses.reserve(n);
  traj.poses.push_back(pose);
  for (std::size_t i = 1; i < n; ++i) {
    traj.poses.push_back(step_unicycle(traj.poses.back(), cmd, cfg.dt));
  }
  return traj;
}

double obstacle_cost(const Trajectory& traj, std::span<const Obstacle> obstacles, const ControllerConfig& cfg) {
  const double scale = cfg.physical_projection ? cfg.dt : cfg.skip_n * cfg.dt;
  return projected_clearance_cost(traj, obstacles, cfg.footprint_points(), cfg, scale);
}

double obstacle_cost_static(const Trajectory& traj, std::span<const Obstacle> obstacles,
                            const ControllerConfig& cfg) {
  return projected_clearance_cost(traj, obstacles, cfg.footprint_points(), cfg, 0.0);
}

double obstacle_cost_ttc(const Trajectory& traj, std::span<const Obstacle> obstacles, double ego_v,
                         const ControllerConfig& cfg) {
  return ttc_cost(traj, obstacles, ego_v, circumradius(cfg.footprint), cfg);
}

double speed_cost(double v, const ControllerConfig& cfg) {
  const double diff = cfg.v_max - v;
  double cost = cfg.squared_costs ? diff * diff : diff;
  if (v < 0.0) {
    cost += cfg.reverse_penalty * std::abs(v);
  }
  return cost;
}

double goal_cost(const Trajectory& traj, Vec2 goal) {
  if (traj.poses.empty()) {
    throw std::invalid_argument("goal_cost: empty trajectory");
  }
  return distance(traj.poses.back().position(), goal);
}

PlanResult plan(const Pose2& pose, UnicycleCommand current, Vec2 goal, std::span<const Obstacle> obstacles,
                const ControllerConfig& cfg, ObstacleCostMode mode) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();

  const std::vector<Vec2> footprint = cfg.footprint_points();
  const double robot_radius = circumradius(cfg.footprint);
  const double projection_scale =
      mode == ObstacleCostMode::static_ ? 0.0 : (cfg.physical_projection ? cfg.dt : cfg.skip_n * cfg.dt);

  PlanResult result;
  result.best.total = kInf;
  bool have_best = false;
  const auto samples = admissible_window(current, cfg);
  result.candidates.reserve(samples.size());
  Trajectory traj;
  for (const UnicycleCommand& cmd : samples) {
    traj = simulate_trajectory(pose, cmd, cfg);
    CandidateScore score;
    score.command = cmd;
    score.obstacle = mode == ObstacleCostMode::ttc
                         ? ttc_cost(traj, obstacles, cmd.v, robot_radius, cfg)
                         : projected_clearance_cost(traj, obstacles, footprint, cfg, projection_scale);
    score.speed = speed_cost(cmd.v, cfg);
    const double g = goal_cost(traj, goal);
    score.goal = cfg.squared_costs ? g * g : g;
    score.feasible = std::isfinite(score.obstacle);
    score.total = score.feasible
                      ? cfg.w_obstacle * score.obstacle + cfg.w_speed * score.speed + cfg.w_goal * score.goal
                      : kInf;
    if (!score.feasible) {
      ++result.infeasible_count;
    } else if (score.total < result.best.total) {
      result.best = score;
      result.trajectory = traj;
      have_best = true;
    }
    result.candidates.push_back(score);
  }

  if (have_best) {
    result.command = result.best.command;
  } else {
    result.no_feasible_trajectory = true;
    result.command = {0.0, 0.0};
    result.trajectory = simulate_trajectory(pose, result.command, cfg);
    result.best = CandidateScore{result.command, kInf, speed_cost(0.0, cfg), goal_cost(result.trajectory, goal),
                                 kInf, false};
  }
  result.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace motplan
