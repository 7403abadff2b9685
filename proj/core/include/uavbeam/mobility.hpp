#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavbeam/terrain.hpp"

namespace uavbeam {

enum class AltitudeMode {
  kConstant,         ///< fixed height above the start point's ground
  kTerrainFollowing  ///< fixed height above the ground under the UAV
};

const char* altitude_mode_name(AltitudeMode mode);
AltitudeMode parse_altitude_mode(const std::string& text);

/// Axis-aligned rectangle in the local frame.
struct Area {
  double x0 = -2000.0;
  double y0 = -2000.0;
  double width = 4000.0;
  double height = 4000.0;
};

/// Straight, constant-speed flight.
struct Trajectory {
  int id = 0;
  Position start{};
  double heading_deg = 0.0;
  double speed_mps = 14.0;
  double altitude_agl_m = 40.0;
  double duration_s = 120.0;
  AltitudeMode altitude_mode = AltitudeMode::kConstant;
  /// Set when the path was cut short at the map boundary.
  bool truncated = false;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct UavState {
  double t = 0.0;
  Position position{};
  Vec3 velocity{};
};

struct TrajectoryParams {
  std::uint64_t seed = 1;
  int count = 200;
  Area area{};
  double altitude_agl_m = 40.0;
  double speed_mps = 14.0;
  double duration_s = 120.0;
  AltitudeMode altitude_mode = AltitudeMode::kConstant;
};

struct TrajectorySet {
  std::vector<Trajectory> trajectories;
  /// True when the area could not keep whole paths inside it and starts were
  /// drawn over the full area with boundary truncation instead.
  bool margin_fallback = false;
};

/// Draws `count` straight paths, fully determined by `seed`. Path midpoints
/// are uniform over the area shrunk by half a path length on every side,
/// headings uniform in [0, 360), so every path stays inside the area.
TrajectorySet generate_trajectories(const TrajectoryParams& params, const TerrainGrid& terrain);

/// Exact kinematic state at time t in [0, duration]. `terrain` is only read in
/// terrain-following mode. Throws DomainError for t out of range.
UavState step(const Trajectory& traj, double t, const TerrainGrid* terrain = nullptr);

/// Cuts the trajectory where it would leave `area`.
Trajectory truncate_to_area(Trajectory traj, const Area& area);

/// `id,start_x,start_y,heading_deg,speed,altitude_agl,duration`
std::string format_trajectories_csv(const std::vector<Trajectory>& trajectories);
/// Start altitude is rebuilt from the terrain and altitude mode.
std::vector<Trajectory> parse_trajectories_csv(std::string_view text, const std::string& source_name,
                                               const TerrainGrid& terrain,
                                               AltitudeMode mode = AltitudeMode::kConstant);
std::vector<Trajectory> load_trajectories_csv(const std::string& path, const TerrainGrid& terrain,
                                              AltitudeMode mode = AltitudeMode::kConstant);

}  // namespace uavbeam
