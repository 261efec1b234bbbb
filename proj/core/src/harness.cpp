#include "motplan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "motplan/clustering.hpp"
#include "motplan/scan_frontend.hpp"
#include "motplan/ticks_io.hpp"
#include "motplan/tracking.hpp"

namespace motplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

struct Robot {
  EgoConfig ego;
  RobotState state;
  UnicycleCommand current;  // realized velocity, seeds the dynamic window
  MultiObjectTracker tracker;
  RobotRun run;
  bool done = false;
};

Polygon footprint_at(const Pose2& pose, const ControllerConfig& cfg) {
  return transform_polygon(pose, cfg.footprint);
}

}  // namespace

RmseResult compute_rmse(std::span<const TickRecord> ticks, double burn_in, double match_radius) {
  double pos_sq = 0.0;
  double vel_sq = 0.0;
  std::size_t n = 0;
  for (const TickRecord& tick : ticks) {
    if (tick.t < burn_in) {
      continue;
    }
    for (const TrackRow& track : tick.tracks) {
      const TruthRow* best = nullptr;
      double best_d = kInf;
      for (const TruthRow& truth : tick.truth) {
        const double d = std::hypot(track.x - truth.x, track.y - truth.y);
        if (d < best_d) {
          best_d = d;
          best = &truth;
        }
      }
      if (best == nullptr || best_d > match_radius) {
        continue;
      }
      pos_sq += best_d * best_d;
      const double dvx = track.vx - best->vx;
      const double dvy = track.vy - best->vy;
      vel_sq += dvx * dvx + dvy * dvy;
      ++n;
    }
  }
  if (n == 0) {
    return {kNaN, kNaN, 0};
  }
  return {std::sqrt(pos_sq / n), std::sqrt(vel_sq / n), n};
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) {
    return kNaN;
  }
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(p / 100.0 * static_cast<double>(values.size()));
  const std::size_t idx = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(values.size()))) - 1;
  return values[idx];
}

RunSummary summarize_ticks(std::span<const TickRecord> ticks, const SummaryInputs& inputs) {
  RunSummary s;
  s.ticks = ticks.size();
  s.min_separation = kInf;
  s.time_to_goal = kNaN;
  s.min_cmd_v = ticks.empty() ? 0.0 : kInf;
  std::vector<double> latency;
  latency.reserve(ticks.size());
  double v_sum = 0.0;
  for (const TickRecord& tick : ticks) {
    s.duration = tick.t;
    s.min_separation = std::min(s.min_separation, tick.min_sep);
    latency.push_back(tick.controller_ms);
    s.infeasible_ticks += tick.infeasible ? 1 : 0;
    s.min_cmd_v = std::min(s.min_cmd_v, tick.cmd.v);
    v_sum += tick.cmd.v;
    if (inputs.goal && !s.goal_reached &&
        distance(tick.pose.position(), *inputs.goal) <= inputs.goal_tolerance) {
      s.goal_reached = true;
      s.time_to_goal = tick.t;
    }
  }
  s.collision = s.min_separation <= 0.0;
  s.mean_cmd_v = ticks.empty() ? 0.0 : v_sum / static_cast<double>(ticks.size());
  s.controller_p50_ms = percentile(latency, 50.0);
  s.controller_p95_ms = percentile(latency, 95.0);
  s.controller_max_ms = latency.empty() ? kNaN : *std::max_element(latency.begin(), latency.end());
  const RmseResult rmse = compute_rmse(ticks, inputs.burn_in, inputs.truth_match_radius);
  s.position_rmse = rmse.position;
  s.velocity_rmse = rmse.velocity;
  s.matched_samples = rmse.samples;
  return s;
}

RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  if (config.egos.empty()) {
    throw std::invalid_argument("run_scenario: scenario has no ego robot");
  }
  const std::uint64_t seed = options.seed.value_or(config.seed);
  TrackerParams tracker_params = config.tracker;
  if (options.associator) {
    tracker_params.associator = *options.associator;
  }
  const ObstacleCostMode mode = options.obstacle_cost.value_or(config.obstacle_cost);
  const ControllerConfig& ctrl = config.controller;
  ctrl.validate();

  const World world(config.map, config.agents);
  std::vector<Robot> robots;
  robots.reserve(config.egos.size());
  for (std::size_t k = 0; k < config.egos.size(); ++k) {
    const EgoConfig& ego = config.egos[k];
    RobotState state;
    state.x = ego.start.x;
    state.y = ego.start.y;
    state.theta = normalize_angle(ego.start.theta);
    robots.push_back(Robot{ego, state, {}, MultiObjectTracker(tracker_params, mix_seed(seed, 0x7472ULL, k)), {},
                           false});
  }

  const auto tick_count = static_cast<std::size_t>(std::floor(config.duration / config.dt + 1e-9)) + 1;
  for (std::size_t tick = 0; tick < tick_count; ++tick) {
    const double t = static_cast<double>(tick) * config.dt;

    std::vector<Body> robot_bodies;
    robot_bodies.reserve(robots.size());
    for (std::size_t k = 0; k < robots.size(); ++k) {
      robot_bodies.push_back({Body::Kind::robot, static_cast<int>(k), footprint_at(robots[k].state.pose(), ctrl)});
    }
    const WorldSnapshot snap = world.snapshot(t, robot_bodies);
    const std::vector<AgentState> truth = ground_truth(world, t);

    bool any_active = false;
    for (std::size_t k = 0; k < robots.size(); ++k) {
      Robot& robot = robots[k];
      if (robot.done) {
        continue;
      }
      any_active = true;
      const Pose2 pose = robot.state.pose();

      // sense
      std::vector<LaserScan> scans;
      scans.reserve(config.lidars.size());
      for (std::size_t l = 0; l < config.lidars.size(); ++l) {
        scans.push_back(raycast_scan(snap, pose, config.lidars[l], mix_seed(seed, tick, k, l + 1),
                                     static_cast<int>(k)));
      }
      const PointCloud cloud = process_scans(scans, config.lidars, pose, *config.map, config.frontend);
      const std::vector<ObjectObservation> observations = detect_objects(cloud, config.clustering);

      // track
      robot.tracker.tick(observations, t);
      const std::vector<Obstacle> obstacles = export_obstacles(robot.tracker.tracks());

      TickRecord rec;
      rec.t = t;
      rec.pose = pose;
      const bool at_goal = distance(pose.position(), robot.ego.goal) <= config.metrics.goal_tolerance;

      // plan
      if (at_goal) {
        rec.cmd = {0.0, 0.0};
        robot.done = true;
      } else {
        const PlanResult plan_result = plan(pose, robot.current, robot.ego.goal, obstacles, ctrl, mode);
        rec.cmd = plan_result.command;
        rec.infeasible = plan_result.no_feasible_trajectory;
        rec.controller_ms = options.record_timing ? plan_result.duration_ms : 0.0;
        if (options.trace) {
          bool marked = plan_result.no_feasible_trajectory;
          for (std::size_t i = 0; i < plan_result.candidates.size(); ++i) {
            const CandidateScore& c = plan_result.candidates[i];
            const bool chosen = !marked && c.command == plan_result.command && c.total == plan_result.best.total;
            marked = marked || chosen;
            robot.run.trace.push_back({t, i, c, chosen});
          }
        }
      }

      const Polygon own = robot_bodies[k].polygon;
      rec.min_sep = kInf;
      for (const Body& body : snap.bodies) {
        if (body.kind == Body::Kind::robot && body.id == static_cast<int>(k)) {
          continue;
        }
        rec.min_sep = std::min(rec.min_sep, convex_polygon_distance(own, body.polygon));
      }
      for (const Track& track : robot.tracker.tracks()) {
        rec.tracks.push_back({track.id, track.mean(0), track.mean(1), track.mean(2), track.mean(3), track.radius,
                              track.raw_velocity.x, track.raw_velocity.y, track.age});
      }
      for (const AgentState& a : truth) {
        rec.truth.push_back({a.id, a.x, a.y, a.vx, a.vy});
      }
      robot.run.ticks.push_back(std::move(rec));
    }
    if (!any_active) {
      break;
    }

    // act
    for (Robot& robot : robots) {
      if (robot.done || robot.run.ticks.empty() || robot.run.ticks.back().t != t) {
        continue;
      }
      const UnicycleCommand cmd = robot.run.ticks.back().cmd;
      if (robot.ego.model == EgoModel::tricycle) {
        const TricycleCommand tc = to_tricycle_command(cmd, robot.ego.tricycle);
        robot.state = step_tricycle(robot.state, tc, config.dt, robot.ego.tricycle);
        const double psi = robot.state.psi;
        robot.current = {robot.state.v_s * std::cos(psi),
                         robot.state.v_s * std::sin(psi) / robot.ego.tricycle.wheelbase};
      } else {
        const Pose2 next = step_unicycle(robot.state.pose(), cmd, config.dt);
        robot.state.x = next.x;
        robot.state.y = next.y;
        robot.state.theta = next.theta;
        robot.state.v_s = cmd.v;
        robot.current = cmd;
      }
    }
  }

  RunResult result;
  result.all_goals_reached = true;
  for (Robot& robot : robots) {
    SummaryInputs inputs{robot.ego.goal, config.metrics.goal_tolerance, config.metrics.burn_in,
                         config.metrics.truth_match_radius};
    robot.run.summary = summarize_ticks(robot.run.ticks, inputs);
    result.any_collision = result.any_collision || robot.run.summary.collision;
    result.all_goals_reached = result.all_goals_reached && robot.run.summary.goal_reached;
    result.max_robot_p95_ms = std::max(result.max_robot_p95_ms, robot.run.summary.controller_p95_ms);
    result.robots.push_back(std::move(robot.run));
  }
  return result;
}

RunResult run_scenario(const std::filesystem::path& config_path, const std::filesystem::path& output_dir,
                       const RunOptions& options) {
  const ScenarioConfig config = load_scenario(config_path);
  RunResult result = run_scenario(config, options);
  std::filesystem::create_directories(output_dir);
  const bool multi = result.robots.size() > 1;
  for (std::size_t k = 0; k < result.robots.size(); ++k) {
    const RobotRun& run = result.robots[k];
    const SummaryInputs inputs{config.egos[k].goal, config.metrics.goal_tolerance, config.metrics.burn_in,
                               config.metrics.truth_match_radius};
    if (k == 0) {
      write_ticks_csv(output_dir / "ticks.csv", run.ticks);
      write_summary_json(output_dir / "summary.json", run.summary, inputs);
      if (options.trace) {
        write_trace_csv(output_dir / "trace.csv", run.trace);
      }
    }
    if (multi) {
      const std::string suffix = "_ego" + std::to_string(k);
      write_ticks_csv(output_dir / ("ticks" + suffix + ".csv"), run.ticks);
      write_summary_json(output_dir / ("summary" + suffix + ".json"), run.summary, inputs);
      if (options.trace) {
        write_trace_csv(output_dir / ("trace" + suffix + ".csv"), run.trace);
      }
    }
  }
  return result;
}

}  // namespace motplan
