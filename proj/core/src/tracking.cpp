#include "motplan/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motplan {

void TrackerParams::validate() const {
  if (ensemble_size < 2) {
    throw std::invalid_argument("tracker: ensemble size N must be >= 2");
  }
  if (!(inflation >= 1.0)) {
    throw std::invalid_argument("tracker: inflation alpha must be >= 1");
  }
  if (window < 1) {
    throw std::invalid_argument("tracker: window W must be >= 1");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("tracker: dt must be positive");
  }
  if (miss_limit < 0) {
    throw std::invalid_argument("tracker: miss_limit must be >= 0");
  }
  if (!(process_noise_sigma >= 0.0) || !(position_sigma_floor >= 0.0) || !(initial_velocity_sigma >= 0.0)) {
    throw std::invalid_argument("tracker: noise sigmas must be non-negative");
  }
  if (!measurement_noise.allFinite() || (measurement_noise - measurement_noise.transpose()).norm() > 1e-12 ||
      measurement_noise.llt().info() != Eigen::Success) {
    throw std::invalid_argument("tracker: measurement noise R must be symmetric positive definite");
  }
}

void Track::refresh_mean() { mean = ensemble.rowwise().mean(); }

namespace {

Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> standard_normal(Eigen::Index rows, Eigen::Index cols,
                                                                     std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd out(rows, cols);
  // Column-major fill keeps the draw order member by member.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      out(r, c) = n01(rng);
    }
  }
  return out;
}

}  // namespace

Track spawn_track(const ObjectObservation& obs, int id, const TrackerParams& params, std::mt19937_64& rng) {
  params.validate();
  if (!std::isfinite(obs.center.x) || !std::isfinite(obs.center.y)) {
    throw std::invalid_argument("spawn_track: observation center must be finite");
  }
  const auto n = static_cast<Eigen::Index>(params.ensemble_size);
  const double sigma_pos = std::max(obs.radius / 2.0, params.position_sigma_floor);
  const Eigen::Vector4d sigma(sigma_pos, sigma_pos, params.initial_velocity_sigma, params.initial_velocity_sigma);
  const Eigen::Vector4d center(obs.center.x, obs.center.y, 0.0, 0.0);

  Track track;
  track.id = id;
  track.ensemble = (sigma.asDiagonal() * standard_normal(4, n, rng)).colwise() + center;
  track.radius = obs.radius;
  track.last_measurement = obs.center;
  track.last_stamp = obs.stamp;
  track.refresh_mean();
  return track;
}

void forecast(Track& track, const TrackerParams& params, std::mt19937_64& rng) {
  const Eigen::Index n = track.ensemble.cols();
  track.ensemble.topRows<2>() += track.ensemble.bottomRows<2>() * params.dt;
  if (params.process_noise_sigma > 0.0) {
    track.ensemble.topRows<2>() += params.process_noise_sigma * standard_normal(2, n, rng);
  }
  track.refresh_mean();
}

void analyze(Track& track, Vec2 z, const TrackerParams& params, std::mt19937_64& rng) {
  if (!std::isfinite(z.x) || !std::isfinite(z.y)) {
    throw std::invalid_argument("analyze: measurement must be finite");
  }
  const Eigen::Index n = track.ensemble.cols();
  const double scale = 1.0 / static_cast<double>(n - 1);

  const Eigen::Matrix<double, 2, Eigen::Dynamic> predicted = track.ensemble.topRows<2>();
  const Eigen::Vector4d x_mean = track.ensemble.rowwise().mean();
  const Eigen::Vector2d z_mean = predicted.rowwise().mean();
  const Ensemble x_anom = track.ensemble.colwise() - x_mean;
  const Eigen::Matrix<double, 2, Eigen::Dynamic> z_anom = predicted.colwise() - z_mean;

  const Eigen::Matrix<double, 4, 2> p_xz = scale * x_anom * z_anom.transpose();
  const Eigen::Matrix2d p_zz = scale * z_anom * z_anom.transpose();
  const Eigen::Matrix2d innovation_cov = p_zz + params.inflation * params.measurement_noise;
  // K = P_xz S^-1, solved as S K^T = P_xz^T since S is symmetric.
  const Eigen::Matrix<double, 4, 2> gain = innovation_cov.ldlt().solve(p_xz.transpose()).transpose();

  const Eigen::Matrix2d chol = params.measurement_noise.llt().matrixL();
  const Eigen::Matrix<double, 2, Eigen::Dynamic> perturbed =
      (chol * standard_normal(2, n, rng)).colwise() + Eigen::Vector2d(z.x, z.y);

  track.ensemble += gain * (perturbed - predicted);
  track.refresh_mean();
}

void update_velocity(Track& track, Vec2 z_curr, Vec2 z_prev, double elapsed, const TrackerParams& params) {
  if (!(elapsed > 0.0)) {
    throw std::invalid_argument("update_velocity: elapsed time must be positive");
  }
  track.raw_velocity = (z_curr - z_prev) / elapsed;
  track.velocity_window.push_back(track.raw_velocity);
  while (track.velocity_window.size() > params.window) {
    track.velocity_window.pop_front();
  }
  Vec2 sum;
  for (const Vec2& v : track.velocity_window) {
    sum += v;
  }
  const Vec2 avg = sum / static_cast<double>(track.velocity_window.size());
  track.ensemble.row(2).setConstant(avg.x);
  track.ensemble.row(3).setConstant(avg.y);
  track.refresh_mean();
}

MultiObjectTracker::MultiObjectTracker(TrackerParams params, std::uint64_t seed)
    : params_(std::move(params)), rng_(seed) {
  params_.validate();
}

TrackerTickResult MultiObjectTracker::tick(std::span<const ObjectObservation> observations, double stamp) {
  TrackerTickResult result;
  for (Track& t : tracks_) {
    forecast(t, params_, rng_);
    t.age += 1;
  }

  std::vector<Vec2> centers, predicted;
  centers.reserve(observations.size());
  predicted.reserve(tracks_.size());
  for (const auto& o : observations) {
    centers.push_back(o.center);
  }
  for (const auto& t : tracks_) {
    predicted.push_back(t.position());
  }
  const CostMatrix cost = build_cost_matrix(centers, predicted, params_.gate);
  result.assignment = associate(cost, params_.associator);

  for (const auto& [oi, ti] : result.assignment.pairs) {
    Track& t = tracks_[ti];
    const ObjectObservation& obs = observations[oi];
    analyze(t, obs.center, params_, rng_);
    const double elapsed = stamp - t.last_stamp;
    if (elapsed > 0.0) {
      update_velocity(t, obs.center, t.last_measurement, elapsed, params_);
    }
    t.last_measurement = obs.center;
    t.last_stamp = stamp;
    t.radius = obs.radius;
    t.misses = 0;
  }
  for (std::size_t ti : result.assignment.unmatched_tracks) {
    tracks_[ti].misses += 1;
  }
  for (std::size_t oi : result.assignment.unmatched_observations) {
    ObjectObservation obs = observations[oi];
    obs.stamp = stamp;
    tracks_.push_back(spawn_track(obs, next_id_, params_, rng_));
    result.spawned.push_back(next_id_);
    ++next_id_;
  }

  const auto stale = [this](const Track& t) { return t.misses > params_.miss_limit; };
  for (const auto& t : tracks_) {
    if (stale(t)) {
      result.removed.push_back(t.id);
    }
  }
  std::erase_if(tracks_, stale);
  return result;
}

std::vector<Obstacle> export_obstacles(std::span<const Track> tracks) {
  std::vector<Obstacle> out;
  out.reserve(tracks.size());
  for (const auto& t : tracks) {
    out.push_back({t.mean(0), t.mean(1), t.mean(2), t.mean(3), t.radius});
  }
  return out;
}

}  // namespace motplan
