#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavbeam/handover.hpp"
#include "uavbeam/metrics.hpp"
#include "uavbeam/mobility.hpp"
#include "uavbeam/network.hpp"

namespace uavbeam {

/// Full description of one simulation run. Defaults reproduce the reference
/// mmWave UAV scenario (26 GHz, 400 MHz, 18 dBm, 8 dBi / 65 deg elements,
/// -6 dB outage, 3 dB A3, 0.1 s steps, 200 trajectories at 14 m/s).
struct ScenarioConfig {
  RadioConfig radio{};

  ElementPattern element{};
  /// "MxN"; empty keeps the arrays given by the deployment source.
  std::string topology = "8x8";
  double dz_wavelengths = 0.5;
  double dy_wavelengths = 0.5;

  std::string deployment_source = "hex:2:500";
  double antenna_height_m = 25.0;
  double downtilt_deg = 7.0;
  ScanLimits scan_limits{};

  std::string terrain_source = "flat:0";
  double los_step_m = kDefaultLosStepM;
  Area map{};

  int trajectory_count = 200;
  std::uint64_t seed = 1;
  double altitude_agl_m = 40.0;
  double speed_mps = 14.0;
  double duration_s = 120.0;
  AltitudeMode altitude_mode = AltitudeMode::kConstant;
  /// Replays a trajectory CSV instead of generating trajectories.
  std::string trajectory_file{};

  BeamMode beam_mode = BeamMode::kTracking;
  double update_period_s = 0.1;

  A3Config a3{};
  /// Neighbour beam assumption for A3; unset picks `aligned` when tracking
  /// and `static` for the static baseline.
  std::optional<MeasurementAssumption> neighbor_measurement{};

  double time_step_s = 0.1;
  double outage_threshold_db = kDefaultOutageThresholdDb;
  double ping_pong_window_s = kDefaultPingPongWindowS;

  /// Worker threads; 0 uses the hardware concurrency. Not part of the fingerprint.
  int threads = 1;
  /// Keep every LinkSample in the report (memory heavy).
  bool record_samples = false;
};

/// Throws ValidationError naming the offending key.
void validate(const ScenarioConfig& cfg);

/// Reads the JSON configuration format; missing keys keep their defaults.
ScenarioConfig parse_config_json(std::string_view text, const std::string& source_name = "<memory>");
ScenarioConfig load_config(const std::string& path);
/// Canonical JSON of every simulation-relevant key.
std::string config_to_json(const ScenarioConfig& cfg);
/// Stable 64-bit FNV-1a hash of config_to_json, as 16 hex digits.
std::string config_fingerprint(const ScenarioConfig& cfg);

struct ConfigKey {
  const char* key;
  const char* default_value;
  const char* description;
};
/// Every configuration key with its default, for help output.
const std::vector<ConfigKey>& config_keys();

/// The resolved world a run operates on.
struct SimulationContext {
  TerrainGrid terrain;
  Deployment deployment;
  LinkContext link;
  MeasurementPolicy policy;
  ScenarioConfig config;
};

SimulationContext build_context(const ScenarioConfig& cfg);

/// Trajectories a run uses: the replay file if set, else a seeded draw.
TrajectorySet resolve_trajectories(const ScenarioConfig& cfg, const TerrainGrid& terrain);

struct TrajectoryResult {
  TrajectoryMetrics metrics{};
  std::vector<HandoverEvent> handovers{};
  std::vector<LinkSample> samples{};
  /// Serving beam states observed after each step, only when recording.
  std::vector<BeamState> beams{};
};

/// One trajectory, with per-step order move, track, sample, A3, handover.
TrajectoryResult simulate_trajectory(const SimulationContext& ctx, const Trajectory& traj,
                                     bool record_samples = false);

struct TrajectoryHandover {
  int trajectory_id = 0;
  HandoverEvent event{};
};

struct RunSummary {
  int trajectories = 0;
  double median_outage_cost = 0.0;
  double mean_outage_cost = 0.0;
  double median_handovers_per_min = 0.0;
  double mean_handovers_per_min = 0.0;
  long long total_handovers = 0;
  long long total_ping_pongs = 0;
};

struct RunReport {
  std::string fingerprint;
  std::string config_json;
  std::uint64_t seed = 0;
  bool margin_fallback = false;
  std::vector<Trajectory> trajectories;
  std::vector<TrajectoryMetrics> metrics;
  std::vector<TrajectoryHandover> handovers;
  std::vector<EcdfPoint> ecdf_outage;
  std::vector<EcdfPoint> ecdf_handover_rate;
  RunSummary summary;
  std::vector<std::vector<LinkSample>> samples;
  std::vector<std::string> warnings;
};

RunReport run(const ScenarioConfig& cfg);

enum class SweepAxis { kTopology, kUpdatePeriod, kAltitude };

SweepAxis parse_sweep_axis(const std::string& text);
const char* sweep_axis_name(SweepAxis axis);

/// Applies one sweep value. Topology values accept a `static:` prefix that
/// switches the run to the fixed-beam baseline, e.g. `static:32x2`.
ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepAxis axis, const std::string& value);

struct SweepResult {
  SweepAxis axis = SweepAxis::kTopology;
  std::vector<std::string> values;
  std::vector<RunReport> reports;
  /// Set when a run failed; reports holds the runs completed before it.
  std::optional<std::string> error;
};

SweepResult sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<std::string>& values);

std::string format_handovers_csv(const std::vector<TrajectoryHandover>& handovers);
std::vector<TrajectoryHandover> parse_handovers_csv(std::string_view text,
                                                    const std::string& source_name = "<memory>");
std::string format_report_json(const RunReport& report);
std::string format_comparison_csv(const SweepResult& result);

/// Writes report.json, metrics.csv, handovers.csv, ecdf_outage.csv,
/// ecdf_handover_rate.csv and trajectories.csv (plus SVG plots on request).
void write_report(const RunReport& report, const std::string& dir, bool plots = false);
/// One subdirectory per value plus comparison.csv.
void write_sweep(const SweepResult& result, const std::string& dir, bool plots = false);

}  // namespace uavbeam
