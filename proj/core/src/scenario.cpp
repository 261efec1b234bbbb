#include "motplan/scenario.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace motplan {

namespace {

using nlohmann::json;

/// Typed, path-aware access to one JSON object. Keys that are never read
/// are reported by finish().
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  std::string field(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const { return node_.contains(std::string(key)); }

  const json& raw(std::string_view key) {
    if (!has(key)) {
      throw ConfigError(field(key), "required field missing");
    }
    seen_.insert(std::string(key));
    return node_.at(std::string(key));
  }

  const json* optional_raw(std::string_view key) {
    if (!has(key)) {
      return nullptr;
    }
    return &raw(key);
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) {
    const json* v = optional_raw(key);
    if (!v) {
      if (!fallback) throw ConfigError(field(key), "required field missing");
      return *fallback;
    }
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "expected a finite number");
    return d;
  }

  long long integer(std::string_view key, std::optional<long long> fallback = std::nullopt) {
    const json* v = optional_raw(key);
    if (!v) {
      if (!fallback) throw ConfigError(field(key), "required field missing");
      return *fallback;
    }
    if (!v->is_number_integer()) throw ConfigError(field(key), "expected an integer");
    return v->get<long long>();
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = optional_raw(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) {
    const json* v = optional_raw(key);
    if (!v) {
      if (!fallback) throw ConfigError(field(key), "required field missing");
      return *fallback;
    }
    if (!v->is_string()) throw ConfigError(field(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.contains(it.key())) {
        throw ConfigError(field(it.key()), "unknown field");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> number_array(const json& v, const std::string& field, std::size_t expected = 0) {
  if (!v.is_array()) throw ConfigError(field, "expected an array");
  if (expected != 0 && v.size() != expected) {
    throw ConfigError(field, "expected " + std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(field + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Vec2 read_vec2(const json& v, const std::string& field) {
  const auto a = number_array(v, field, 2);
  return {a[0], a[1]};
}

Pose2 read_pose(const json& v, const std::string& field) {
  const auto a = number_array(v, field, 3);
  return {a[0], a[1], a[2]};
}

Polygon read_polygon(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of [x, y] vertices");
  Polygon poly;
  for (std::size_t i = 0; i < v.size(); ++i) {
    poly.push_back(read_vec2(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return poly;
}

std::shared_ptr<const OccupancyGrid> read_map(const json& node) {
  ObjectReader r(node, "map");
  const double width = r.number("width_m");
  const double height = r.number("height_m");
  const double res = r.number("resolution_m");
  Vec2 origin{};
  if (const json* o = r.optional_raw("origin")) origin = read_vec2(*o, "map.origin");
  std::shared_ptr<OccupancyGrid> grid;
  try {
    grid = std::make_shared<OccupancyGrid>(width, height, res, origin);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("map", e.what());
  }
  if (const json* cells = r.optional_raw("occupied_cells")) {
    if (!cells->is_array()) throw ConfigError("map.occupied_cells", "expected an array of [col, row]");
    for (std::size_t i = 0; i < cells->size(); ++i) {
      const std::string f = "map.occupied_cells[" + std::to_string(i) + "]";
      const json& c = (*cells)[i];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        throw ConfigError(f, "expected [col, row] integers");
      }
      try {
        grid->set_occupied(c[0].get<int>(), c[1].get<int>());
      } catch (const std::out_of_range& e) {
        throw ConfigError(f, e.what());
      }
    }
  }
  r.finish();
  return grid;
}

EgoConfig read_ego(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  EgoConfig ego;
  ego.start = read_pose(r.raw("start_pose"), r.field("start_pose"));
  ego.goal = read_vec2(r.raw("goal"), r.field("goal"));
  const std::string model = r.string("model", "unicycle");
  if (model == "tricycle") {
    ego.model = EgoModel::tricycle;
  } else if (model == "unicycle") {
    ego.model = EgoModel::unicycle;
  } else {
    throw ConfigError(r.field("model"), "expected \"tricycle\" or \"unicycle\"");
  }
  ego.tricycle.wheelbase = r.number("L", 1.0);
  ego.tricycle.offset_a = r.number("A", 0.0);
  ego.tricycle.psi_max = r.number("psi_max", 1.2);
  if (!(ego.tricycle.wheelbase > 0.0)) throw ConfigError(r.field("L"), "must be positive");
  if (!(ego.tricycle.psi_max > 0.0)) throw ConfigError(r.field("psi_max"), "must be positive");
  r.finish();
  return ego;
}

LidarSpec read_lidar(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  LidarSpec spec;
  spec.fov_deg = r.number("fov_deg", spec.fov_deg);
  spec.angular_resolution_deg = r.number("ang_res_deg", spec.angular_resolution_deg);
  spec.max_range = r.number("max_range_m", spec.max_range);
  spec.range_noise_sigma = r.number("noise_sigma_m", spec.range_noise_sigma);
  if (const json* m = r.optional_raw("mount_pose")) spec.mount = read_pose(*m, r.field("mount_pose"));
  r.finish();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

AgentScript read_agent(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  AgentScript agent;
  agent.id = static_cast<int>(r.integer("id"));
  agent.shape = read_polygon(r.raw("shape"), r.field("shape"));
  const json& wps = r.raw("waypoints");
  if (!wps.is_array()) throw ConfigError(r.field("waypoints"), "expected an array of [x, y, t]");
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const auto a = number_array(wps[i], r.field("waypoints") + "[" + std::to_string(i) + "]", 3);
    agent.waypoints.push_back({a[0], a[1], a[2]});
  }
  r.finish();
  try {
    agent.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return agent;
}

void read_controller(const json& node, ScenarioConfig& cfg) {
  ObjectReader r(node, "controller");
  ControllerConfig& c = cfg.controller;
  c.v_min = r.number("v_min", c.v_min);
  c.v_max = r.number("v_max", c.v_max);
  c.omega_max = r.number("omega_max", c.omega_max);
  c.accel_v = r.number("accel_v", c.accel_v);
  c.accel_omega = r.number("accel_omega", c.accel_omega);
  c.n_v = static_cast<int>(r.integer("n_v", c.n_v));
  c.n_omega = static_cast<int>(r.integer("n_omega", c.n_omega));
  c.horizon = r.number("horizon_s", c.horizon);
  c.dt = r.number("dt_s", cfg.dt);
  c.skip_n = static_cast<int>(r.integer("skip_n", c.skip_n));
  if (const json* f = r.optional_raw("footprint")) c.footprint = read_polygon(*f, "controller.footprint");
  c.footprint_sample_spacing = r.number("footprint_sample_spacing_m", c.footprint_sample_spacing);
  c.obstacle_margin = r.number("obstacle_margin_m", c.obstacle_margin);
  c.w_obstacle = r.number("w_o", c.w_obstacle);
  c.w_speed = r.number("w_v", c.w_speed);
  c.w_goal = r.number("w_g", c.w_goal);
  c.reverse_penalty = r.number("reverse_penalty", c.reverse_penalty);
  c.squared_costs = r.boolean("squared_costs", c.squared_costs);
  c.physical_projection = r.boolean("physical_projection", c.physical_projection);
  c.fold_obstacle_radius = r.boolean("fold_obstacle_radius", c.fold_obstacle_radius);
  c.ttc_epsilon = r.number("ttc_epsilon", c.ttc_epsilon);
  const std::string mode = r.string("obstacle_cost", "projected");
  try {
    cfg.obstacle_cost = parse_obstacle_cost_mode(mode);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("controller.obstacle_cost", e.what());
  }
  r.finish();
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("controller", e.what());
  }
}

void read_tracker(const json& node, ScenarioConfig& cfg) {
  ObjectReader r(node, "tracker");
  TrackerParams& t = cfg.tracker;
  const long long n = r.integer("N", static_cast<long long>(t.ensemble_size));
  if (n < 2) throw ConfigError("tracker.N", "ensemble size must be >= 2");
  t.ensemble_size = static_cast<std::size_t>(n);
  t.inflation = r.number("alpha", t.inflation);
  if (const json* rm = r.optional_raw("R_meas")) {
    if (rm->is_array() && rm->size() == 2 && (*rm)[0].is_number()) {
      const auto d = number_array(*rm, "tracker.R_meas", 2);
      t.measurement_noise = Eigen::Vector2d(d[0], d[1]).asDiagonal();
    } else if (rm->is_array() && rm->size() == 2) {
      const auto r0 = number_array((*rm)[0], "tracker.R_meas[0]", 2);
      const auto r1 = number_array((*rm)[1], "tracker.R_meas[1]", 2);
      t.measurement_noise << r0[0], r0[1], r1[0], r1[1];
    } else {
      throw ConfigError("tracker.R_meas", "expected [var_x, var_y] or a 2x2 matrix (m^2)");
    }
  }
  t.process_noise_sigma = r.number("sigma_proc", t.process_noise_sigma);
  const long long w = r.integer("W", static_cast<long long>(t.window));
  if (w < 1) throw ConfigError("tracker.W", "window must be >= 1");
  t.window = static_cast<std::size_t>(w);
  t.miss_limit = static_cast<int>(r.integer("miss_limit", t.miss_limit));
  t.position_sigma_floor = r.number("sigma_floor", t.position_sigma_floor);
  t.initial_velocity_sigma = r.number("sigma_v0", t.initial_velocity_sigma);
  t.gate = r.number("gate_m", t.gate);
  try {
    t.associator = parse_associator(r.string("associator", "gnn"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("tracker.associator", e.what());
  }
  t.dt = cfg.dt;
  r.finish();
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("tracker", e.what());
  }
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  ObjectReader r(root, "");
  cfg.name = r.string("name", "scenario");
  cfg.dt = r.number("dt_s", cfg.dt);
  if (!(cfg.dt > 0.0)) throw ConfigError("dt_s", "must be positive");
  cfg.duration = r.number("duration_s", cfg.duration);
  if (!(cfg.duration > 0.0)) throw ConfigError("duration_s", "must be positive");
  const long long seed = r.integer("seed", 0);
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);

  if (const json* m = r.optional_raw("map")) cfg.map = read_map(*m);

  if (r.has("ego") && r.has("egos")) throw ConfigError("egos", "give either ego or egos, not both");
  if (const json* e = r.optional_raw("ego")) {
    cfg.egos.push_back(read_ego(*e, "ego"));
  } else if (const json* es = r.optional_raw("egos")) {
    if (!es->is_array() || es->empty()) throw ConfigError("egos", "expected a non-empty array");
    for (std::size_t i = 0; i < es->size(); ++i) {
      cfg.egos.push_back(read_ego((*es)[i], "egos[" + std::to_string(i) + "]"));
    }
  } else {
    throw ConfigError("ego", "required field missing");
  }

  if (const json* l = r.optional_raw("lidar")) {
    if (l->is_array()) {
      for (std::size_t i = 0; i < l->size(); ++i) {
        cfg.lidars.push_back(read_lidar((*l)[i], "lidar[" + std::to_string(i) + "]"));
      }
    } else {
      cfg.lidars.push_back(read_lidar(*l, "lidar"));
    }
  }
  if (cfg.lidars.empty()) cfg.lidars.push_back(LidarSpec{});

  if (const json* a = r.optional_raw("agents")) {
    if (!a->is_array()) throw ConfigError("agents", "expected an array");
    std::set<int> ids;
    for (std::size_t i = 0; i < a->size(); ++i) {
      cfg.agents.push_back(read_agent((*a)[i], "agents[" + std::to_string(i) + "]"));
      if (!ids.insert(cfg.agents.back().id).second) {
        throw ConfigError("agents[" + std::to_string(i) + "].id", "duplicate agent id");
      }
    }
  }

  // Controller and tracker default their dt to the scenario's dt_s.
  cfg.controller.dt = cfg.dt;
  cfg.tracker.dt = cfg.dt;
  if (const json* c = r.optional_raw("controller")) read_controller(*c, cfg);
  if (const json* t = r.optional_raw("tracker")) read_tracker(*t, cfg);

  if (const json* f = r.optional_raw("frontend")) {
    ObjectReader fr(*f, "frontend");
    cfg.frontend.max_stamp_skew = fr.number("max_stamp_skew_s", cfg.frontend.max_stamp_skew);
    cfg.frontend.static_margin = fr.number("static_margin_m", cfg.frontend.static_margin);
    cfg.frontend.downsample_spacing = fr.number("downsample_m", cfg.frontend.downsample_spacing);
    fr.finish();
  }
  if (const json* c = r.optional_raw("clustering")) {
    ObjectReader cr(*c, "clustering");
    const long long k = cr.integer("k_min", static_cast<long long>(cfg.clustering.min_points));
    if (k < 1) throw ConfigError("clustering.k_min", "must be >= 1");
    cfg.clustering.min_points = static_cast<std::size_t>(k);
    cfg.clustering.distance_threshold = cr.number("d_thresh_m", cfg.clustering.distance_threshold);
    if (!(cfg.clustering.distance_threshold > 0.0)) throw ConfigError("clustering.d_thresh_m", "must be positive");
    cr.finish();
  }
  if (const json* m = r.optional_raw("metrics")) {
    ObjectReader mr(*m, "metrics");
    cfg.metrics.burn_in = mr.number("burn_in_s", cfg.metrics.burn_in);
    cfg.metrics.goal_tolerance = mr.number("goal_tolerance_m", cfg.metrics.goal_tolerance);
    cfg.metrics.truth_match_radius = mr.number("truth_match_radius_m", cfg.metrics.truth_match_radius);
    mr.finish();
  }
  r.finish();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw ConfigNotFound(path);
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigNotFound(path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

}  // namespace motplan
