#include "uavbeam/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "uavbeam/errors.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

namespace {

constexpr double kRad = std::numbers::pi / 180.0;
constexpr double kTimeTolerance = 1e-9;

// Uniform double in [0, 1) from the top 53 bits; unlike std distributions the
// mapping is identical on every standard library.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double start_altitude(const TerrainGrid& terrain, double x, double y, double agl) {
  return elevation_at(terrain, x, y) + agl;
}

}  // namespace

const char* altitude_mode_name(AltitudeMode mode) {
  return mode == AltitudeMode::kConstant ? "constant" : "terrain-following";
}

AltitudeMode parse_altitude_mode(const std::string& text) {
  if (text == "constant") return AltitudeMode::kConstant;
  if (text == "terrain-following" || text == "terrain_following") return AltitudeMode::kTerrainFollowing;
  throw ValidationError("unknown altitude mode '" + text + "', expected constant or terrain-following");
}

Trajectory truncate_to_area(Trajectory traj, const Area& area) {
  const double vx = traj.speed_mps * std::sin(traj.heading_deg * kRad);
  const double vy = traj.speed_mps * std::cos(traj.heading_deg * kRad);
  double t_exit = std::numeric_limits<double>::infinity();
  auto axis = [&](double p, double v, double lo, double hi) {
    if (v > 0.0) t_exit = std::min(t_exit, (hi - p) / v);
    if (v < 0.0) t_exit = std::min(t_exit, (lo - p) / v);
  };
  axis(traj.start.x, vx, area.x0, area.x0 + area.width);
  axis(traj.start.y, vy, area.y0, area.y0 + area.height);
  t_exit = std::max(t_exit, 0.0);
  if (t_exit < traj.duration_s) {
    traj.duration_s = t_exit;
    traj.truncated = true;
  }
  return traj;
}

TrajectorySet generate_trajectories(const TrajectoryParams& params, const TerrainGrid& terrain) {
  if (params.count < 1) throw DomainError("generate_trajectories: count must be >= 1");
  if (!(params.speed_mps > 0.0)) throw DomainError("generate_trajectories: speed must be > 0");
  if (!(params.duration_s > 0.0)) throw DomainError("generate_trajectories: duration must be > 0");
  if (!(params.area.width > 0.0) || !(params.area.height > 0.0)) {
    throw DomainError("generate_trajectories: area must have positive extent");
  }
  const Area& a = params.area;
  const double half = 0.5 * params.speed_mps * params.duration_s;
  TrajectorySet set;
  set.margin_fallback = !(a.width > 2.0 * half && a.height > 2.0 * half);

  std::mt19937_64 rng(params.seed);
  set.trajectories.reserve(static_cast<std::size_t>(params.count));
  for (int i = 0; i < params.count; ++i) {
    const double ux = unit_uniform(rng);
    const double uy = unit_uniform(rng);
    const double heading = 360.0 * unit_uniform(rng);
    Trajectory t;
    t.id = i;
    t.heading_deg = heading;
    t.speed_mps = params.speed_mps;
    t.altitude_agl_m = params.altitude_agl_m;
    t.duration_s = params.duration_s;
    t.altitude_mode = params.altitude_mode;
    if (!set.margin_fallback) {
      const double mx = a.x0 + half + ux * (a.width - 2.0 * half);
      const double my = a.y0 + half + uy * (a.height - 2.0 * half);
      t.start.x = mx - half * std::sin(heading * kRad);
      t.start.y = my - half * std::cos(heading * kRad);
    } else {
      t.start.x = a.x0 + ux * a.width;
      t.start.y = a.y0 + uy * a.height;
      t = truncate_to_area(t, a);
    }
    t.start.z = start_altitude(terrain, t.start.x, t.start.y, t.altitude_agl_m);
    set.trajectories.push_back(t);
  }
  return set;
}

UavState step(const Trajectory& traj, double t, const TerrainGrid* terrain) {
  if (!(t >= -kTimeTolerance && t <= traj.duration_s + kTimeTolerance)) {
    std::ostringstream os;
    os << "step: t = " << t << " outside [0, " << traj.duration_s << "] for trajectory " << traj.id;
    throw DomainError(os.str());
  }
  const double s = std::sin(traj.heading_deg * kRad);
  const double c = std::cos(traj.heading_deg * kRad);
  UavState st;
  st.t = t;
  st.velocity = {traj.speed_mps * s, traj.speed_mps * c, 0.0};
  st.position.x = traj.start.x + t * st.velocity.x;
  st.position.y = traj.start.y + t * st.velocity.y;
  if (traj.altitude_mode == AltitudeMode::kTerrainFollowing) {
    if (!terrain) throw LogicError("step: terrain-following mode needs the terrain grid");
    st.position.z = elevation_at(*terrain, st.position.x, st.position.y) + traj.altitude_agl_m;
  } else {
    st.position.z = traj.start.z;
  }
  return st;
}

std::string format_trajectories_csv(const std::vector<Trajectory>& trajectories) {
  std::ostringstream os;
  os << "id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n";
  for (const auto& t : trajectories) {
    os << t.id << ',' << text::format_double(t.start.x) << ',' << text::format_double(t.start.y) << ','
       << text::format_double(t.heading_deg) << ',' << text::format_double(t.speed_mps) << ','
       << text::format_double(t.altitude_agl_m) << ',' << text::format_double(t.duration_s) << '\n';
  }
  return os.str();
}

std::vector<Trajectory> parse_trajectories_csv(std::string_view content, const std::string& source_name,
                                               const TerrainGrid& terrain, AltitudeMode mode) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != "id,start_x,start_y,heading_deg,speed,altitude_agl,duration") {
    throw ParseError(source_name +
                     ":1: expected header id,start_x,start_y,heading_deg,speed,altitude_agl,duration");
  }
  static const char* kFields[] = {"id", "start_x", "start_y", "heading_deg", "speed", "altitude_agl",
                                  "duration"};
  std::vector<Trajectory> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto toks = text::split_csv_line(lines[i]);
    if (toks.size() != 7) {
      throw ParseError(source_name + ":" + std::to_string(i + 1) + ": expected 7 fields, found " +
                       std::to_string(toks.size()));
    }
    Trajectory t;
    t.id = static_cast<int>(text::parse_int(toks[0], kFields[0], i + 1, source_name));
    t.start.x = text::parse_double(toks[1], kFields[1], i + 1, source_name);
    t.start.y = text::parse_double(toks[2], kFields[2], i + 1, source_name);
    t.heading_deg = text::parse_double(toks[3], kFields[3], i + 1, source_name);
    t.speed_mps = text::parse_double(toks[4], kFields[4], i + 1, source_name);
    t.altitude_agl_m = text::parse_double(toks[5], kFields[5], i + 1, source_name);
    t.duration_s = text::parse_double(toks[6], kFields[6], i + 1, source_name);
    t.altitude_mode = mode;
    if (!(t.speed_mps > 0.0) || !(t.duration_s > 0.0)) {
      throw ParseError(source_name + ":" + std::to_string(i + 1) + ": speed and duration must be > 0");
    }
    try {
      t.start.z = start_altitude(terrain, t.start.x, t.start.y, t.altitude_agl_m);
    } catch (const BoundsError& e) {
      throw ParseError(source_name + ":" + std::to_string(i + 1) + ": start outside terrain: " + e.what());
    }
    out.push_back(t);
  }
  return out;
}

std::vector<Trajectory> load_trajectories_csv(const std::string& path, const TerrainGrid& terrain,
                                              AltitudeMode mode) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error&) {
    throw ParseError("cannot open trajectory file: " + path);
  }
  return parse_trajectories_csv(content, path, terrain, mode);
}

}  // namespace uavbeam
