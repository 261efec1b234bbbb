#include "motplan/ticks_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace motplan {

namespace {

constexpr std::size_t kFixedColumns = 9;
constexpr std::size_t kTrackFields = 6;
constexpr std::size_t kTruthFields = 5;

void put(std::string& line, double v) {
  line += ',';
  if (std::isinf(v)) {
    line += v > 0 ? "inf" : "-inf";
    return;
  }
  if (std::isnan(v)) {
    line += "nan";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid a signed zero after rounding.
  if (std::string_view(buf).find_first_not_of("-0.") == std::string_view::npos) {
    std::snprintf(buf, sizeof buf, "%.6f", 0.0);
  }
  line += buf;
}

void put(std::string& line, long long v) {
  line += ',';
  line += std::to_string(v);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

double to_double(const std::string& s, std::size_t line_no) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("ticks.csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

int to_int(const std::string& s, std::size_t line_no) {
  const double v = to_double(s, line_no);
  if (!std::isfinite(v) || v != std::floor(v)) {
    throw std::runtime_error("ticks.csv line " + std::to_string(line_no) + ": expected an integer, got '" + s +
                             "'");
  }
  return static_cast<int>(v);
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void write_ticks_csv(std::ostream& out, std::span<const TickRecord> ticks) {
  std::string header = "t,ego_x,ego_y,ego_theta,cmd_v,cmd_omega,controller_ms,infeasible,min_sep";
  const std::size_t truth_count = ticks.empty() ? 0 : ticks.front().truth.size();
  for (std::size_t i = 0; i < truth_count; ++i) {
    header += ",agent_id,x,y,vx,vy";
  }
  out << header << '\n';
  std::string line;
  for (const TickRecord& r : ticks) {
    if (r.truth.size() != truth_count) {
      throw std::invalid_argument("write_ticks_csv: truth agent count changed between ticks");
    }
    line.clear();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.t);
    line += buf;
    put(line, r.pose.x);
    put(line, r.pose.y);
    put(line, r.pose.theta);
    put(line, r.cmd.v);
    put(line, r.cmd.omega);
    put(line, r.controller_ms);
    put(line, static_cast<long long>(r.infeasible ? 1 : 0));
    put(line, r.min_sep);
    for (const TrackRow& tr : r.tracks) {
      put(line, static_cast<long long>(tr.id));
      put(line, tr.x);
      put(line, tr.y);
      put(line, tr.vx);
      put(line, tr.vy);
      put(line, tr.r);
    }
    for (const TruthRow& g : r.truth) {
      put(line, static_cast<long long>(g.agent_id));
      put(line, g.x);
      put(line, g.y);
      put(line, g.vx);
      put(line, g.vy);
    }
    out << line << '\n';
  }
}

void write_ticks_csv(const std::filesystem::path& path, std::span<const TickRecord> ticks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  write_ticks_csv(out, ticks);
}

std::vector<TickRecord> read_ticks_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("ticks.csv: missing header");
  }
  const std::vector<std::string> header = split(line);
  if (header.size() < kFixedColumns || header[0] != "t" || header[8] != "min_sep" ||
      (header.size() - kFixedColumns) % kTruthFields != 0) {
    throw std::runtime_error("ticks.csv: unexpected header");
  }
  const std::size_t truth_count = (header.size() - kFixedColumns) / kTruthFields;
  std::vector<TickRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> f = split(line);
    const std::size_t tail = truth_count * kTruthFields;
    if (f.size() < kFixedColumns + tail || (f.size() - kFixedColumns - tail) % kTrackFields != 0) {
      throw std::runtime_error("ticks.csv line " + std::to_string(line_no) + ": wrong field count");
    }
    TickRecord r;
    r.t = to_double(f[0], line_no);
    r.pose = {to_double(f[1], line_no), to_double(f[2], line_no), to_double(f[3], line_no)};
    r.cmd = {to_double(f[4], line_no), to_double(f[5], line_no)};
    r.controller_ms = to_double(f[6], line_no);
    r.infeasible = to_int(f[7], line_no) != 0;
    r.min_sep = to_double(f[8], line_no);
    const std::size_t track_count = (f.size() - kFixedColumns - tail) / kTrackFields;
    std::size_t i = kFixedColumns;
    for (std::size_t k = 0; k < track_count; ++k, i += kTrackFields) {
      TrackRow tr;
      tr.id = to_int(f[i], line_no);
      tr.x = to_double(f[i + 1], line_no);
      tr.y = to_double(f[i + 2], line_no);
      tr.vx = to_double(f[i + 3], line_no);
      tr.vy = to_double(f[i + 4], line_no);
      tr.r = to_double(f[i + 5], line_no);
      r.tracks.push_back(tr);
    }
    for (std::size_t k = 0; k < truth_count; ++k, i += kTruthFields) {
      r.truth.push_back({to_int(f[i], line_no), to_double(f[i + 1], line_no), to_double(f[i + 2], line_no),
                         to_double(f[i + 3], line_no), to_double(f[i + 4], line_no)});
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TickRecord> read_ticks_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_ticks_csv(in);
}

void write_trace_csv(const std::filesystem::path& path, std::span<const CandidateTrace> trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "t,candidate,v,omega,obstacle,speed,goal,total,feasible,chosen\n";
  std::string line;
  for (const CandidateTrace& c : trace) {
    line.clear();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", c.t);
    line += buf;
    put(line, static_cast<long long>(c.index));
    put(line, c.score.command.v);
    put(line, c.score.command.omega);
    put(line, c.score.obstacle);
    put(line, c.score.speed);
    put(line, c.score.goal);
    put(line, c.score.total);
    put(line, static_cast<long long>(c.score.feasible ? 1 : 0));
    put(line, static_cast<long long>(c.chosen ? 1 : 0));
    out << line << '\n';
  }
}

std::string summary_to_json(const RunSummary& s, const SummaryInputs& inputs) {
  nlohmann::ordered_json j;
  j["ticks"] = s.ticks;
  j["duration_s"] = s.duration;
  j["position_rmse_m"] = number_or_null(s.position_rmse);
  j["velocity_rmse_mps"] = number_or_null(s.velocity_rmse);
  j["matched_samples"] = s.matched_samples;
  j["min_separation_m"] = number_or_null(s.min_separation);
  j["collision"] = s.collision;
  j["controller_p50_ms"] = number_or_null(s.controller_p50_ms);
  j["controller_p95_ms"] = number_or_null(s.controller_p95_ms);
  j["controller_max_ms"] = number_or_null(s.controller_max_ms);
  j["goal_reached"] = s.goal_reached;
  j["time_to_goal_s"] = number_or_null(s.time_to_goal);
  j["infeasible_ticks"] = s.infeasible_ticks;
  j["min_cmd_v"] = number_or_null(s.min_cmd_v);
  j["mean_cmd_v"] = number_or_null(s.mean_cmd_v);
  j["goal_x"] = inputs.goal ? number_or_null(inputs.goal->x) : nlohmann::json(nullptr);
  j["goal_y"] = inputs.goal ? number_or_null(inputs.goal->y) : nlohmann::json(nullptr);
  j["goal_tolerance_m"] = inputs.goal_tolerance;
  j["burn_in_s"] = inputs.burn_in;
  j["truth_match_radius_m"] = inputs.truth_match_radius;
  return j.dump(2) + "\n";
}

void write_summary_json(const std::filesystem::path& path, const RunSummary& summary, const SummaryInputs& inputs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << summary_to_json(summary, inputs);
}

std::string describe_summary(const RunSummary& s) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "ticks              %zu (last t = %.3f s)\n"
                "min separation     %.3f m%s\n"
                "infeasible ticks   %zu\n"
                "cmd v              min %.3f, mean %.3f m/s\n"
                "controller latency p50 %.3f ms, p95 %.3f ms, max %.3f ms\n"
                "tracking           position RMSE %.3f m, velocity RMSE %.3f m/s (%zu samples)\n",
                s.ticks, s.duration, s.min_separation, s.collision ? " (COLLISION)" : "", s.infeasible_ticks,
                s.min_cmd_v, s.mean_cmd_v, s.controller_p50_ms, s.controller_p95_ms, s.controller_max_ms,
                s.position_rmse, s.velocity_rmse, s.matched_samples);
  std::string out = buf;
  if (s.goal_reached) {
    std::snprintf(buf, sizeof buf, "goal               reached at t = %.3f s\n", s.time_to_goal);
    out += buf;
  }
  return out;
}

}  // namespace motplan
