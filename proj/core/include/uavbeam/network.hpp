#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavbeam/antenna.hpp"
#include "uavbeam/channel.hpp"
#include "uavbeam/terrain.hpp"

namespace uavbeam {

enum class BeamMode { kTracking, kStatic };

const char* beam_mode_name(BeamMode mode);
BeamMode parse_beam_mode(const std::string& text);

struct BeamState {
  SteeringAngles steer{};
  double last_update_t = 0.0;
  BeamMode mode = BeamMode::kTracking;
};

/// Electronic scan range of a sector panel, measured from boresight.
struct ScanLimits {
  double max_azimuth_deg = 60.0;
  double max_elevation_deg = 45.0;
};

struct Site {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  /// Ground elevation used for the mast base; terrain lookup when unset.
  std::optional<double> ground_override{};
  std::optional<double> antenna_height_m{};
};

struct Sector {
  int id = 0;
  int site_id = 0;
  Position position{};
  SectorOrientation orientation{};
  ArraySpec array{};
  BeamState beam{};
};

/// Sites plus their sector panels. Sectors are kept sorted by id.
class Deployment {
 public:
  Deployment() = default;
  /// Validates ids and site references; throws ValidationError.
  Deployment(std::vector<Site> sites, std::vector<Sector> sectors);

  const std::vector<Site>& sites() const { return sites_; }
  const std::vector<Sector>& sectors() const { return sectors_; }
  std::vector<Sector>& sectors() { return sectors_; }

  const Sector& sector(int id) const;
  Sector& sector(int id);
  bool contains(int id) const;

 private:
  std::vector<Site> sites_;
  std::vector<Sector> sectors_;
};

/// Defaults applied to sites and sectors that do not override them.
struct DeploymentOptions {
  double antenna_height_m = 25.0;
  double default_downtilt_deg = 7.0;
  ArraySpec default_array{};
  BeamMode beam_mode = BeamMode::kTracking;
  /// Centre of generated layouts.
  double center_x = 0.0;
  double center_y = 0.0;
};

/// Parses the JSON deployment schema
/// `{sites:[{id,x,y,ground_override?,antenna_height?}],
///   sectors:[{id,site,azimuth_deg,downtilt_deg?,array?:{m,n,dz?,dy?}}]}`.
Deployment parse_deployment_json(std::string_view text, const std::string& source_name,
                                 const TerrainGrid& terrain, const DeploymentOptions& options);
Deployment load_deployment(const std::string& path, const TerrainGrid& terrain,
                           const DeploymentOptions& options);
std::string format_deployment_json(const Deployment& deployment);

/// Hexagonal layout: 1 + 3 r (r + 1) sites at spacing `isd_m`, three sectors
/// each at azimuths 0, 120 and 240 degrees.
Deployment make_hex_deployment(int rings, double isd_m, const TerrainGrid& terrain,
                               const DeploymentOptions& options);
/// nx by ny rectangular site lattice, three sectors per site.
Deployment make_grid_deployment(int nx, int ny, double spacing_m, const TerrainGrid& terrain,
                                const DeploymentOptions& options);

/// Resolves `hex:<rings>:<isd_m>`, `grid:<nx>x<ny>:<spacing_m>` or a JSON file path.
Deployment deployment_from_source(const std::string& source, const TerrainGrid& terrain,
                                  const DeploymentOptions& options);

/// Which beam a sector is assumed to use when measured.
enum class MeasurementAssumption {
  kAligned,  ///< freshly steered at the UAV
  kCurrent,  ///< the sector's BeamState as-is
  kStatic,   ///< fixed boresight pattern
};

const char* assumption_name(MeasurementAssumption a);
MeasurementAssumption parse_assumption(const std::string& text);

/// Everything besides the sector and the UAV position a link evaluation needs.
struct LinkContext {
  RadioConfig radio{};
  const TerrainGrid* terrain = nullptr;  ///< null: every link is LOS
  double los_step_m = kDefaultLosStepM;
  ScanLimits limits{};
};

struct LinkMeasurement {
  double rx_power_dbm = 0.0;
  double snr_db = 0.0;
  double gain_db = 0.0;
  double distance_m = 0.0;
  bool los = true;
  /// Angle between the beam's pointing direction and the true UAV direction.
  double misalignment_deg = 0.0;
  SteeringAngles steer{};
};

/// Array-frame steering towards `target`, clamped to the scan limits.
SteeringAngles aligned_steer(const Sector& sector, const Position& target, const ScanLimits& limits);

LinkMeasurement measure_link(const Sector& sector, const Position& uav,
                             MeasurementAssumption assumption, const LinkContext& ctx);

/// Received power at the UAV under the given beam assumption.
double measure_cell(const Sector& sector, const Position& uav, MeasurementAssumption assumption,
                    const LinkContext& ctx);

/// Upper bound of measure_cell over every assumption and steering.
double rx_power_upper_bound_dbm(const Sector& sector, const Position& uav, const LinkContext& ctx);

/// Sector with the strongest measurement; ties go to the lowest id.
int best_server(const Deployment& deployment, const Position& uav, MeasurementAssumption assumption,
                const LinkContext& ctx);

}  // namespace uavbeam
