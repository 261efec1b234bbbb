#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "motplan/association.hpp"
#include "motplan/clustering.hpp"
#include "motplan/geometry.hpp"

namespace motplan {

/// Ensemble members are the columns; rows are (x, y, vx, vy).
using Ensemble = Eigen::Matrix<double, 4, Eigen::Dynamic>;

struct TrackerParams {
  std::size_t ensemble_size = 50;  // N
  double inflation = 1.02;         // alpha
  Eigen::Matrix2d measurement_noise = Eigen::Vector2d(0.05 * 0.05, 0.05 * 0.05).asDiagonal();
  double process_noise_sigma = 0.02;  // m per forecast step
  std::size_t window = 5;             // W
  int miss_limit = 10;                // ticks
  double dt = 0.1;                    // s
  double position_sigma_floor = 0.05; // m
  double initial_velocity_sigma = 0.1; // m/s
  double gate = 1.0;                  // m
  Associator associator = Associator::gnn;

  /// Throws std::invalid_argument when N < 2, alpha < 1, W < 1, dt <= 0 or R
  /// is not symmetric positive definite.
  void validate() const;
};

struct Track {
  int id = 0;
  Ensemble ensemble;
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  double radius = 0.0;
  std::deque<Vec2> velocity_window;
  Vec2 raw_velocity;  // last differenced velocity, before windowing
  Vec2 last_measurement;
  double last_stamp = 0.0;
  int misses = 0;
  int age = 0;

  Vec2 position() const { return {mean(0), mean(1)}; }
  Vec2 velocity() const { return {mean(2), mean(3)}; }
  /// Recomputes `mean` as the ensemble column mean.
  void refresh_mean();
};

/// Row handed to the controller: tracked position, windowed velocity, radius.
struct Obstacle {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double radius = 0.0;
};

/// New track around an observation: members = (center, 0, 0) plus Gaussian
/// spread with position sigma max(R/2, floor) and velocity sigma
/// initial_velocity_sigma.
Track spawn_track(const ObjectObservation& obs, int id, const TrackerParams& params, std::mt19937_64& rng);

/// Holonomic constant-velocity forecast: x += vx*dt + e_x, y += vy*dt + e_y.
void forecast(Track& track, const TrackerParams& params, std::mt19937_64& rng);

/// Stochastic (perturbed-observation) analysis step against a position
/// measurement.
void analyze(Track& track, Vec2 z, const TrackerParams& params, std::mt19937_64& rng);

/// Pushes (z_curr - z_prev)/elapsed into the velocity window and sets every
/// member's velocity, and the mean velocity, to the window average.
void update_velocity(Track& track, Vec2 z_curr, Vec2 z_prev, double elapsed, const TrackerParams& params);

struct TrackerTickResult {
  Assignment assignment;
  std::vector<int> spawned;
  std::vector<int> removed;
};

/// Owns the track table and the filter's random stream.
class MultiObjectTracker {
 public:
  explicit MultiObjectTracker(TrackerParams params, std::uint64_t seed = 0);

  /// forecast -> associate -> analyze / miss / spawn -> delete stale.
  TrackerTickResult tick(std::span<const ObjectObservation> observations, double stamp);

  std::span<const Track> tracks() const { return tracks_; }
  const TrackerParams& params() const { return params_; }

 private:
  TrackerParams params_;
  std::mt19937_64 rng_;
  std::vector<Track> tracks_;
  int next_id_ = 0;
};

std::vector<Obstacle> export_obstacles(std::span<const Track> tracks);

}  // namespace motplan
