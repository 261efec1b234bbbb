#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "motplan/harness.hpp"
#include "motplan/ticks_io.hpp"

namespace {

constexpr int kExitRunFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNotFound = 4;

int run_command(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_dir,
                bool trace, bool no_timing, const std::string& associator, const std::string& obstacle_cost) {
  motplan::RunOptions options;
  options.seed = seed;
  options.trace = trace;
  options.record_timing = !no_timing;
  if (!associator.empty()) options.associator = motplan::parse_associator(associator);
  if (!obstacle_cost.empty()) options.obstacle_cost = motplan::parse_obstacle_cost_mode(obstacle_cost);

  const std::filesystem::path out = out_dir.empty() ? std::filesystem::path("out") : std::filesystem::path(out_dir);
  const motplan::RunResult result = motplan::run_scenario(config, out, options);
  for (std::size_t k = 0; k < result.robots.size(); ++k) {
    if (result.robots.size() > 1) std::cout << "robot " << k << "\n";
    std::cout << motplan::describe_summary(result.robots[k].summary);
  }
  std::cout << "wrote " << out.string() << "\n";
  return result.success() ? 0 : kExitRunFailed;
}

int replay_command(const std::string& ticks_path, double burn_in, double match_radius) {
  const auto ticks = motplan::read_ticks_csv(std::filesystem::path(ticks_path));
  motplan::SummaryInputs inputs;
  inputs.burn_in = burn_in;
  inputs.truth_match_radius = match_radius;
  const motplan::RunSummary summary = motplan::summarize_ticks(ticks, inputs);
  std::cout << motplan::describe_summary(summary);
  std::size_t max_tracks = 0;
  for (const auto& t : ticks) max_tracks = std::max(max_tracks, t.tracks.size());
  std::cout << "max live tracks    " << max_tracks << "\n";
  if (!ticks.empty()) {
    const auto& last = ticks.back().pose;
    std::printf("final pose         (%.3f, %.3f, %.3f)\n", last.x, last.y, last.theta);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-object tracking and predictive DWA scenario runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and write ticks.csv / summary.json");
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  bool trace = false;
  bool no_timing = false;
  std::string associator;
  std::string obstacle_cost;
  run->add_option("config", config, "Scenario JSON")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory (default ./out)");
  run->add_flag("--trace", trace, "Write per-candidate controller scores to trace.csv");
  run->add_flag("--no-timing", no_timing, "Record controller_ms as 0 for reproducible ticks.csv");
  run->add_option("--associator", associator, "gnn|greedy")->check(CLI::IsMember({"gnn", "greedy"}));
  run->add_option("--obstacle-cost", obstacle_cost, "projected|ttc|static")
      ->check(CLI::IsMember({"projected", "ttc", "static"}));

  auto* replay = app.add_subcommand("replay", "Summarize an existing ticks.csv");
  std::string ticks_path;
  double burn_in = 2.0;
  double match_radius = 1.0;
  replay->add_option("ticks", ticks_path, "ticks.csv")->required();
  replay->add_option("--burn-in", burn_in, "Seconds excluded from RMSE");
  replay->add_option("--match-radius", match_radius, "Track-to-truth matching radius (m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return run_command(config, seed, out_dir, trace, no_timing, associator, obstacle_cost);
    return replay_command(ticks_path, burn_in, match_radius);
  } catch (const motplan::ConfigNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const motplan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailed;
  }
}
