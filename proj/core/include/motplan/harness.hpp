#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "motplan/association.hpp"
#include "motplan/controller.hpp"
#include "motplan/scenario.hpp"

namespace motplan {

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<Associator> associator;
  std::optional<ObstacleCostMode> obstacle_cost;
  bool trace = false;
  /// When false, controller_ms is recorded as 0 so ticks.csv depends on the
  /// seed alone.
  bool record_timing = true;
};

struct TrackRow {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double r = 0.0;
  // In-memory only; not part of ticks.csv.
  double raw_vx = 0.0;
  double raw_vy = 0.0;
  int age = 0;
};

struct TruthRow {
  int agent_id = 0;
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

struct TickRecord {
  double t = 0.0;
  Pose2 pose;
  UnicycleCommand cmd;
  double controller_ms = 0.0;
  bool infeasible = false;
  double min_sep = 0.0;  // +inf when nothing else is in the world
  std::vector<TrackRow> tracks;
  std::vector<TruthRow> truth;
};

struct CandidateTrace {
  double t = 0.0;
  std::size_t index = 0;
  CandidateScore score;
  bool chosen = false;
};

struct SummaryInputs {
  std::optional<Vec2> goal;
  double goal_tolerance = 0.3;
  double burn_in = 2.0;
  double truth_match_radius = 1.0;
};

struct RunSummary {
  std::size_t ticks = 0;
  double duration = 0.0;  // s, time of the last tick
  double position_rmse = 0.0;
  double velocity_rmse = 0.0;
  std::size_t matched_samples = 0;
  double min_separation = 0.0;
  bool collision = false;
  double controller_p50_ms = 0.0;
  double controller_p95_ms = 0.0;
  double controller_max_ms = 0.0;
  bool goal_reached = false;
  double time_to_goal = 0.0;  // NaN if never reached
  std::size_t infeasible_ticks = 0;
  double min_cmd_v = 0.0;
  double mean_cmd_v = 0.0;
};

struct RmseResult {
  double position = 0.0;
  double velocity = 0.0;
  std::size_t samples = 0;
};

/// Pairs every track with its nearest ground-truth agent within
/// match_radius, over ticks with t >= burn_in. NaN when nothing matched.
RmseResult compute_rmse(std::span<const TickRecord> ticks, double burn_in, double match_radius);

/// Nearest-rank percentile; NaN on empty input.
double percentile(std::vector<double> values, double p);

RunSummary summarize_ticks(std::span<const TickRecord> ticks, const SummaryInputs& inputs);

struct RobotRun {
  std::vector<TickRecord> ticks;
  std::vector<CandidateTrace> trace;
  RunSummary summary;
};

struct RunResult {
  std::vector<RobotRun> robots;
  bool any_collision = false;
  bool all_goals_reached = false;
  double max_robot_p95_ms = 0.0;

  bool success() const { return !any_collision && all_goals_reached; }
};

/// Runs the closed loop sense -> track -> plan -> act once per dt for every
/// ego robot until all of them reach their goals or the duration elapses.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Loads the scenario, runs it and writes ticks.csv, summary.json (and
/// trace.csv with options.trace) into output_dir. With several robots the
/// per-robot files ticks_ego<k>.csv and summary_ego<k>.json are written too.
RunResult run_scenario(const std::filesystem::path& config_path, const std::filesystem::path& output_dir,
                       const RunOptions& options = {});

}  // namespace motplan
