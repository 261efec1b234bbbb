#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "motplan/harness.hpp"
#include "motplan/ticks_io.hpp"

namespace motplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScenarioConfig small_crossing() {
  return parse_scenario(R"({
    "dt_s": 0.1, "duration_s": 15.0, "seed": 5,
    "ego": {"start_pose": [0, 0, 0], "goal": [4, 0], "model": "tricycle"},
    "lidar": {"noise_sigma_m": 0.01, "mount_pose": [0.7, 0, 0]},
    "agents": [{"id": 1, "shape": [[-0.2, -0.2], [0.2, -0.2], [0.2, 0.2], [-0.2, 0.2]],
                "waypoints": [[3, -4, 0], [3, 4, 8]]}],
    "controller": {"v_min": 0.0, "fold_obstacle_radius": true, "footprint_sample_spacing_m": 0.2}
  })");
}

TickRecord tick(double t, double sep, double v, double ms) {
  TickRecord r;
  r.t = t;
  r.min_sep = sep;
  r.cmd = {v, 0.1};
  r.controller_ms = ms;
  return r;
}

TEST(Percentile, NearestRank) {
  EXPECT_TRUE(std::isnan(percentile({}, 50)));
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 50), 3);
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 95), 5);
  EXPECT_EQ(percentile({5, 1, 3, 2, 4}, 0), 1);
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  EXPECT_EQ(percentile(v, 95), 95);
}

TEST(Rmse, NearestTruthWithinRadiusAfterBurnIn) {
  std::vector<TickRecord> ticks;
  TickRecord early = tick(0.5, 1.0, 0.0, 0.0);
  early.tracks.push_back({0, 10.0, 10.0, 0, 0, 0.1});
  early.truth.push_back({1, 0.0, 0.0, 1.0, 0.0});
  ticks.push_back(early);
  TickRecord late = tick(2.5, 1.0, 0.0, 0.0);
  late.truth = {{1, 0.0, 0.0, 1.0, 0.0}, {2, 5.0, 0.0, 0.0, 1.0}};
  late.tracks = {{0, 0.3, 0.4, 1.0, 0.0, 0.1}, {1, 5.0, 0.0, 0.0, 0.0, 0.1}, {2, 20.0, 0.0, 0.0, 0.0, 0.1}};
  ticks.push_back(late);
  const RmseResult r = compute_rmse(ticks, 2.0, 1.0);
  EXPECT_EQ(r.samples, 2u);
  EXPECT_NEAR(r.position, std::sqrt(0.25 / 2.0), 1e-12);
  EXPECT_NEAR(r.velocity, std::sqrt(1.0 / 2.0), 1e-12);
  EXPECT_TRUE(std::isnan(compute_rmse(ticks, 10.0, 1.0).position));
}

TEST(Summary, AggregatesTicks) {
  std::vector<TickRecord> ticks{tick(0.0, 2.0, 0.2, 1.0), tick(0.1, 0.5, -0.1, 3.0), tick(0.2, kInf, 0.5, 2.0)};
  ticks[1].infeasible = true;
  ticks[2].pose = {4.9, 0.0, 0.0};
  const RunSummary s = summarize_ticks(ticks, {Vec2{5.0, 0.0}, 0.3, 2.0, 1.0});
  EXPECT_EQ(s.ticks, 3u);
  EXPECT_DOUBLE_EQ(s.duration, 0.2);
  EXPECT_DOUBLE_EQ(s.min_separation, 0.5);
  EXPECT_FALSE(s.collision);
  EXPECT_EQ(s.infeasible_ticks, 1u);
  EXPECT_DOUBLE_EQ(s.min_cmd_v, -0.1);
  EXPECT_NEAR(s.mean_cmd_v, 0.2, 1e-12);
  EXPECT_DOUBLE_EQ(s.controller_p50_ms, 2.0);
  EXPECT_DOUBLE_EQ(s.controller_max_ms, 3.0);
  EXPECT_TRUE(s.goal_reached);
  EXPECT_DOUBLE_EQ(s.time_to_goal, 0.2);
  ticks[0].min_sep = 0.0;
  EXPECT_TRUE(summarize_ticks(ticks, {}).collision);
}

TEST(TicksCsv, RoundTripsAndKeepsColumnOrder) {
  std::vector<TickRecord> ticks{tick(0.0, kInf, 0.25, 1.5), tick(0.1, 0.75, -0.0, 0.0)};
  for (auto& r : ticks) r.truth.push_back({3, 1.0, 2.0, 0.5, -0.5});
  ticks[1].tracks.push_back({7, 1.1, 2.1, 0.4, -0.4, 0.3});
  ticks[1].tracks.push_back({8, 9.0, 9.0, 0.0, 0.0, 0.1});
  std::stringstream ss;
  write_ticks_csv(ss, ticks);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "t,ego_x,ego_y,ego_theta,cmd_v,cmd_omega,controller_ms,infeasible,min_sep,agent_id,x,y,vx,vy");
  EXPECT_NE(text.find(",inf,3,"), std::string::npos);
  EXPECT_EQ(text.find("-0.000000"), std::string::npos);
  const auto back = read_ticks_csv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(std::isinf(back[0].min_sep));
  EXPECT_TRUE(back[0].tracks.empty());
  ASSERT_EQ(back[1].tracks.size(), 2u);
  EXPECT_EQ(back[1].tracks[1].id, 8);
  EXPECT_DOUBLE_EQ(back[1].tracks[0].r, 0.3);
  ASSERT_EQ(back[1].truth.size(), 1u);
  EXPECT_DOUBLE_EQ(back[1].truth[0].vy, -0.5);
}

TEST(TicksCsv, MalformedInputThrows) {
  std::stringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_ticks_csv(bad_header), std::runtime_error);
  std::stringstream bad_row("t,ego_x,ego_y,ego_theta,cmd_v,cmd_omega,controller_ms,infeasible,min_sep\n0,1,2\n");
  EXPECT_THROW(read_ticks_csv(bad_row), std::runtime_error);
  std::stringstream bad_number(
      "t,ego_x,ego_y,ego_theta,cmd_v,cmd_omega,controller_ms,infeasible,min_sep\n0,1,2,3,4,5,6,x,8\n");
  EXPECT_THROW(read_ticks_csv(bad_number), std::runtime_error);
}

TEST(SummaryJson, NonFiniteBecomesNull) {
  RunSummary s;
  s.min_separation = kInf;
  s.time_to_goal = std::numeric_limits<double>::quiet_NaN();
  const auto j = nlohmann::json::parse(summary_to_json(s, {}));
  EXPECT_TRUE(j["min_separation_m"].is_null());
  EXPECT_TRUE(j["time_to_goal_s"].is_null());
  EXPECT_TRUE(j["goal_x"].is_null());
  EXPECT_EQ(j["collision"], false);
}

TEST(RunScenario, ClosedLoopRecordsOneTickPerStep) {
  RunOptions opts;
  opts.record_timing = false;
  const RunResult r = run_scenario(small_crossing(), opts);
  ASSERT_EQ(r.robots.size(), 1u);
  const auto& ticks = r.robots[0].ticks;
  ASSERT_GT(ticks.size(), 10u);
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    ASSERT_NEAR(ticks[i].t - ticks[i - 1].t, 0.1, 1e-9);
  }
  for (const auto& t : ticks) {
    ASSERT_EQ(t.truth.size(), 1u);
    ASSERT_EQ(t.controller_ms, 0.0);
  }
  EXPECT_TRUE(r.robots[0].summary.goal_reached);
  EXPECT_FALSE(r.any_collision);
  EXPECT_TRUE(r.success());
}

TEST(RunScenario, SameSeedSameTicksDifferentSeedDiffers) {
  RunOptions opts;
  opts.record_timing = false;
  auto csv = [&](RunOptions o) {
    std::stringstream ss;
    write_ticks_csv(ss, run_scenario(small_crossing(), o).robots[0].ticks);
    return ss.str();
  };
  EXPECT_EQ(csv(opts), csv(opts));
  RunOptions other = opts;
  other.seed = 6;
  EXPECT_NE(csv(opts), csv(other));
}

TEST(RunScenario, WritesArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "motplan_harness_test";
  std::filesystem::remove_all(dir);
  const auto cfg_path = dir / "cfg.json";
  std::filesystem::create_directories(dir);
  std::ofstream(cfg_path) << R"({"dt_s": 0.1, "duration_s": 1.0,
    "ego": {"start_pose": [0, 0, 0], "goal": [10, 0]}})";
  RunOptions opts;
  opts.trace = true;
  const RunResult r = run_scenario(cfg_path, dir / "out", opts);
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "ticks.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "summary.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "trace.csv"));
  EXPECT_EQ(read_ticks_csv(dir / "out" / "ticks.csv").size(), 11u);
  EXPECT_FALSE(r.success());
  std::size_t chosen = 0;
  for (const auto& c : r.robots[0].trace) chosen += c.chosen ? 1 : 0;
  EXPECT_EQ(chosen, 11u);
  EXPECT_THROW(run_scenario(dir / "missing.json", dir / "out"), ConfigNotFound);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace motplan
