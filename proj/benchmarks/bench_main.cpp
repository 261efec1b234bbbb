#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "motplan/association.hpp"
#include "motplan/clustering.hpp"
#include "motplan/controller.hpp"
#include "motplan/tracking.hpp"

namespace {

using namespace motplan;

std::vector<Obstacle> obstacles(int n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-8.0, 8.0), vel(-1.0, 1.0);
  std::vector<Obstacle> out;
  for (int i = 0; i < n; ++i) out.push_back({pos(rng), pos(rng), vel(rng), vel(rng), 0.3});
  return out;
}

void BM_Plan(benchmark::State& state) {
  ControllerConfig cfg;
  cfg.footprint_sample_spacing = state.range(1) ? 0.2 : 0.0;
  const auto obs = obstacles(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan({0, 0, 0}, {0.5, 0.0}, {10.0, 0.0}, obs, cfg));
  }
  state.counters["candidates"] = static_cast<double>(cfg.n_v * cfg.n_omega);
}
BENCHMARK(BM_Plan)->ArgsProduct({{0, 5, 20, 50}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PlanTtc(benchmark::State& state) {
  ControllerConfig cfg;
  const auto obs = obstacles(20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan({0, 0, 0}, {0.5, 0.0}, {10.0, 0.0}, obs, cfg, ObstacleCostMode::ttc));
  }
}
BENCHMARK(BM_PlanTtc)->Unit(benchmark::kMillisecond);

void BM_EuclideanCluster(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  std::vector<Vec2> pts(static_cast<std::size_t>(state.range(0)));
  for (Vec2& p : pts) p = {u(rng), u(rng)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(euclidean_cluster(pts, 3, 0.35));
  }
}
BENCHMARK(BM_EuclideanCluster)->RangeMultiplier(4)->Range(200, 12800);

void BM_Gnn(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  CostMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = u(rng) < 0.2 ? kGatedCost : u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gnn(m));
  }
}
BENCHMARK(BM_Gnn)->DenseRange(2, 8, 2)->Arg(16)->Arg(32);

void BM_TrackerTick(benchmark::State& state) {
  TrackerParams p;
  p.ensemble_size = static_cast<std::size_t>(state.range(0));
  MultiObjectTracker tracker(p, 4);
  std::vector<ObjectObservation> obs(10);
  for (std::size_t i = 0; i < obs.size(); ++i) obs[i].center = {2.0 * i, 0.0};
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    for (auto& o : obs) o.center.x += 0.1 * 0.5;
    benchmark::DoNotOptimize(tracker.tick(obs, t));
  }
}
BENCHMARK(BM_TrackerTick)->Arg(50)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
