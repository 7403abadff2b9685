#include <cstdio>
#include <sstream>

#include "json_fields.hpp"
#include "uavbeam/engine.hpp"
#include "uavbeam/errors.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"radio.carrier_hz", "26e9", "centre frequency f [Hz]"},
      {"radio.bandwidth_hz", "400e6", "signal bandwidth B [Hz]"},
      {"radio.tx_power_dbm", "18", "transmit power p_tx [dBm]"},
      {"radio.noise_density_dbm_hz", "-174", "noise density N0 [dBm/Hz]"},
      {"radio.noise_figure_db", "9", "receiver noise figure F [dB]"},
      {"radio.uav_antenna_gain_dbi", "0", "UAV receive antenna gain [dBi]"},
      {"radio.nlos_penalty_db", "20", "extra loss on terrain-obstructed paths [dB]"},
      {"antenna.element_max_gain_dbi", "8", "antenna element max gain G0 [dBi]"},
      {"antenna.element_hpbw_deg", "65", "antenna element 3 dB beamwidth [deg]"},
      {"antenna.side_lobe_floor_db", "30", "element per-plane attenuation cap [dB]"},
      {"antenna.front_back_db", "30", "element front-to-back ratio [dB]"},
      {"antenna.topology", "\"8x8\"", "array M x N (vertical x horizontal); \"\" keeps deployment arrays"},
      {"antenna.dz_wavelengths", "0.5", "vertical element spacing [wavelengths]"},
      {"antenna.dy_wavelengths", "0.5", "horizontal element spacing [wavelengths]"},
      {"deployment.source", "\"hex:2:500\"", "JSON file, hex:<rings>:<isd_m> or grid:<nx>x<ny>:<spacing_m>"},
      {"deployment.antenna_height_m", "25", "BS antenna height above ground [m]"},
      {"deployment.downtilt_deg", "7", "default sector downtilt [deg]"},
      {"deployment.max_scan_azimuth_deg", "60", "steering limit from boresight, azimuth [deg]"},
      {"deployment.max_scan_elevation_deg", "45", "steering limit from boresight, elevation [deg]"},
      {"terrain.source", "\"flat:0\"", "terrain CSV grid file or flat:<height_m>"},
      {"terrain.los_step_m", "5", "line-of-sight sampling step [m]"},
      {"map.x0", "-2000", "map area west edge [m]"},
      {"map.y0", "-2000", "map area south edge [m]"},
      {"map.width", "4000", "map area width [m] (default area 16 km^2)"},
      {"map.height", "4000", "map area height [m]"},
      {"trajectories.count", "200", "number of trajectories"},
      {"trajectories.seed", "1", "trajectory RNG seed"},
      {"trajectories.altitude_agl_m", "40", "UAV height above ground h [m]"},
      {"trajectories.speed_mps", "14", "UAV speed [m/s]"},
      {"trajectories.duration_s", "120", "flight duration per trajectory [s]"},
      {"trajectories.altitude_mode", "\"constant\"", "constant or terrain-following"},
      {"trajectories.file", "\"\"", "replay trajectories from this CSV instead of generating"},
      {"beam.mode", "\"tracking\"", "tracking (beamsteering) or static (fixed boresight baseline)"},
      {"beam.update_period_s", "0.1", "serving beam update period [s]"},
      {"a3.threshold_db", "3", "A3 threshold T_A3 [dB]"},
      {"a3.time_to_trigger_s", "0", "A3 time-to-trigger [s]"},
      {"a3.hysteresis_db", "0", "A3 hysteresis [dB]"},
      {"a3.neighbor_measurement", "\"\"", "aligned, current or static; \"\" = aligned when tracking, static otherwise"},
      {"simulation.time_step_s", "0.1", "simulator time step [s]"},
      {"simulation.outage_threshold_db", "-6", "outage SNR threshold [dB]"},
      {"simulation.ping_pong_window_s", "1", "ping-pong detection window [s]"},
      {"simulation.threads", "1", "worker threads, 0 = all cores"},
  };
  return keys;
}

void validate(const ScenarioConfig& cfg) {
  auto require = [](bool ok, const char* key, const char* what) {
    if (!ok) throw ValidationError(std::string("config key '") + key + "': " + what);
  };
  require(cfg.radio.carrier_hz > 0.0, "radio.carrier_hz", "must be > 0");
  require(cfg.radio.bandwidth_hz > 0.0, "radio.bandwidth_hz", "must be > 0");
  require(cfg.radio.nlos_penalty_db >= 0.0, "radio.nlos_penalty_db", "must be >= 0");
  require(cfg.element.hpbw_deg > 0.0, "antenna.element_hpbw_deg", "must be > 0");
  require(cfg.element.side_lobe_floor_db > 0.0, "antenna.side_lobe_floor_db", "must be > 0");
  require(cfg.element.front_back_db > 0.0, "antenna.front_back_db", "must be > 0");
  require(cfg.dz_wavelengths > 0.0, "antenna.dz_wavelengths", "must be > 0");
  require(cfg.dy_wavelengths > 0.0, "antenna.dy_wavelengths", "must be > 0");
  if (!cfg.topology.empty()) {
    try {
      parse_topology(cfg.topology);
    } catch (const ValidationError& e) {
      require(false, "antenna.topology", e.what());
    }
  }
  require(!cfg.deployment_source.empty(), "deployment.source", "must not be empty");
  require(cfg.downtilt_deg >= -90.0 && cfg.downtilt_deg <= 90.0, "deployment.downtilt_deg",
          "must be within [-90, 90]");
  require(cfg.scan_limits.max_azimuth_deg >= 0.0 && cfg.scan_limits.max_azimuth_deg <= 180.0,
          "deployment.max_scan_azimuth_deg", "must be within [0, 180]");
  require(cfg.scan_limits.max_elevation_deg >= 0.0 && cfg.scan_limits.max_elevation_deg <= 90.0,
          "deployment.max_scan_elevation_deg", "must be within [0, 90]");
  require(!cfg.terrain_source.empty(), "terrain.source", "must not be empty");
  require(cfg.los_step_m > 0.0, "terrain.los_step_m", "must be > 0");
  require(cfg.map.width > 0.0, "map.width", "must be > 0");
  require(cfg.map.height > 0.0, "map.height", "must be > 0");
  require(cfg.trajectory_count >= 1, "trajectories.count", "must be >= 1");
  require(cfg.speed_mps > 0.0, "trajectories.speed_mps", "must be > 0");
  require(cfg.duration_s > 0.0, "trajectories.duration_s", "must be > 0");
  require(cfg.altitude_agl_m >= 0.0, "trajectories.altitude_agl_m", "must be >= 0");
  require(cfg.time_step_s > 0.0, "simulation.time_step_s", "must be > 0");
  require(cfg.update_period_s + 1e-12 >= cfg.time_step_s, "beam.update_period_s",
          "must be >= simulation.time_step_s");
  require(cfg.a3.threshold_db >= 0.0, "a3.threshold_db", "must be >= 0");
  require(cfg.a3.time_to_trigger_s >= 0.0, "a3.time_to_trigger_s", "must be >= 0");
  require(cfg.a3.hysteresis_db >= 0.0, "a3.hysteresis_db", "must be >= 0");
  require(cfg.ping_pong_window_s >= 0.0, "simulation.ping_pong_window_s", "must be >= 0");
  require(cfg.threads >= 0, "simulation.threads", "must be >= 0");
}

ScenarioConfig parse_config_json(std::string_view text, const std::string& source_name) {
  detail::JsonDocument doc(text, source_name);
  const auto& root = doc.root();
  doc.require_object(root, "");
  doc.check_keys(root, "",
                 {"radio", "antenna", "deployment", "terrain", "map", "trajectories", "beam", "a3", "simulation"});
  ScenarioConfig cfg;
  static const nlohmann::json kEmpty = nlohmann::json::object();
  auto section = [&](const char* name) -> const nlohmann::json& {
    const auto* s = doc.find(root, name);
    if (!s) return kEmpty;
    doc.require_object(*s, std::string("/") + name);
    return *s;
  };

  {
    const auto& s = section("radio");
    const std::string p = "/radio";
    doc.check_keys(s, p, {"carrier_hz", "bandwidth_hz", "tx_power_dbm", "noise_density_dbm_hz",
                          "noise_figure_db", "uav_antenna_gain_dbi", "nlos_penalty_db"});
    auto& r = cfg.radio;
    r.carrier_hz = doc.number_or(s, p, "carrier_hz", r.carrier_hz);
    r.bandwidth_hz = doc.number_or(s, p, "bandwidth_hz", r.bandwidth_hz);
    r.tx_power_dbm = doc.number_or(s, p, "tx_power_dbm", r.tx_power_dbm);
    r.noise_density_dbm_hz = doc.number_or(s, p, "noise_density_dbm_hz", r.noise_density_dbm_hz);
    r.noise_figure_db = doc.number_or(s, p, "noise_figure_db", r.noise_figure_db);
    r.uav_antenna_gain_dbi = doc.number_or(s, p, "uav_antenna_gain_dbi", r.uav_antenna_gain_dbi);
    r.nlos_penalty_db = doc.number_or(s, p, "nlos_penalty_db", r.nlos_penalty_db);
  }
  {
    const auto& s = section("antenna");
    const std::string p = "/antenna";
    doc.check_keys(s, p, {"element_max_gain_dbi", "element_hpbw_deg", "side_lobe_floor_db", "front_back_db",
                          "topology", "dz_wavelengths", "dy_wavelengths"});
    auto& e = cfg.element;
    e.max_gain_dbi = doc.number_or(s, p, "element_max_gain_dbi", e.max_gain_dbi);
    e.hpbw_deg = doc.number_or(s, p, "element_hpbw_deg", e.hpbw_deg);
    e.side_lobe_floor_db = doc.number_or(s, p, "side_lobe_floor_db", e.side_lobe_floor_db);
    e.front_back_db = doc.number_or(s, p, "front_back_db", e.front_back_db);
    cfg.topology = doc.string_or(s, p, "topology", cfg.topology);
    if (!cfg.topology.empty()) {
      try {
        parse_topology(cfg.topology);
      } catch (const ValidationError& ex) {
        doc.fail(p + "/topology", ex.what());
      }
    }
    cfg.dz_wavelengths = doc.number_or(s, p, "dz_wavelengths", cfg.dz_wavelengths);
    cfg.dy_wavelengths = doc.number_or(s, p, "dy_wavelengths", cfg.dy_wavelengths);
  }
  {
    const auto& s = section("deployment");
    const std::string p = "/deployment";
    doc.check_keys(s, p, {"source", "antenna_height_m", "downtilt_deg", "max_scan_azimuth_deg",
                          "max_scan_elevation_deg"});
    cfg.deployment_source = doc.string_or(s, p, "source", cfg.deployment_source);
    cfg.antenna_height_m = doc.number_or(s, p, "antenna_height_m", cfg.antenna_height_m);
    cfg.downtilt_deg = doc.number_or(s, p, "downtilt_deg", cfg.downtilt_deg);
    cfg.scan_limits.max_azimuth_deg =
        doc.number_or(s, p, "max_scan_azimuth_deg", cfg.scan_limits.max_azimuth_deg);
    cfg.scan_limits.max_elevation_deg =
        doc.number_or(s, p, "max_scan_elevation_deg", cfg.scan_limits.max_elevation_deg);
  }
  {
    const auto& s = section("terrain");
    const std::string p = "/terrain";
    doc.check_keys(s, p, {"source", "los_step_m"});
    cfg.terrain_source = doc.string_or(s, p, "source", cfg.terrain_source);
    cfg.los_step_m = doc.number_or(s, p, "los_step_m", cfg.los_step_m);
  }
  {
    const auto& s = section("map");
    const std::string p = "/map";
    doc.check_keys(s, p, {"x0", "y0", "width", "height"});
    cfg.map.x0 = doc.number_or(s, p, "x0", cfg.map.x0);
    cfg.map.y0 = doc.number_or(s, p, "y0", cfg.map.y0);
    cfg.map.width = doc.number_or(s, p, "width", cfg.map.width);
    cfg.map.height = doc.number_or(s, p, "height", cfg.map.height);
  }
  {
    const auto& s = section("trajectories");
    const std::string p = "/trajectories";
    doc.check_keys(s, p, {"count", "seed", "altitude_agl_m", "speed_mps", "duration_s", "altitude_mode", "file"});
    cfg.trajectory_count = static_cast<int>(doc.integer_or(s, p, "count", cfg.trajectory_count));
    const long long seed = doc.integer_or(s, p, "seed", static_cast<long long>(cfg.seed));
    if (seed < 0) doc.fail(p + "/seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.altitude_agl_m = doc.number_or(s, p, "altitude_agl_m", cfg.altitude_agl_m);
    cfg.speed_mps = doc.number_or(s, p, "speed_mps", cfg.speed_mps);
    cfg.duration_s = doc.number_or(s, p, "duration_s", cfg.duration_s);
    const std::string mode = doc.string_or(s, p, "altitude_mode", altitude_mode_name(cfg.altitude_mode));
    try {
      cfg.altitude_mode = parse_altitude_mode(mode);
    } catch (const ValidationError& ex) {
      doc.fail(p + "/altitude_mode", ex.what());
    }
    cfg.trajectory_file = doc.string_or(s, p, "file", cfg.trajectory_file);
  }
  {
    const auto& s = section("beam");
    const std::string p = "/beam";
    doc.check_keys(s, p, {"mode", "update_period_s"});
    const std::string mode = doc.string_or(s, p, "mode", beam_mode_name(cfg.beam_mode));
    try {
      cfg.beam_mode = parse_beam_mode(mode);
    } catch (const ValidationError& ex) {
      doc.fail(p + "/mode", ex.what());
    }
    cfg.update_period_s = doc.number_or(s, p, "update_period_s", cfg.update_period_s);
  }
  {
    const auto& s = section("a3");
    const std::string p = "/a3";
    doc.check_keys(s, p, {"threshold_db", "time_to_trigger_s", "hysteresis_db", "neighbor_measurement"});
    cfg.a3.threshold_db = doc.number_or(s, p, "threshold_db", cfg.a3.threshold_db);
    cfg.a3.time_to_trigger_s = doc.number_or(s, p, "time_to_trigger_s", cfg.a3.time_to_trigger_s);
    cfg.a3.hysteresis_db = doc.number_or(s, p, "hysteresis_db", cfg.a3.hysteresis_db);
    const std::string nm = doc.string_or(s, p, "neighbor_measurement", "");
    if (!nm.empty()) {
      try {
        cfg.neighbor_measurement = parse_assumption(nm);
      } catch (const ValidationError& ex) {
        doc.fail(p + "/neighbor_measurement", ex.what());
      }
    }
  }
  {
    const auto& s = section("simulation");
    const std::string p = "/simulation";
    doc.check_keys(s, p, {"time_step_s", "outage_threshold_db", "ping_pong_window_s", "threads"});
    cfg.time_step_s = doc.number_or(s, p, "time_step_s", cfg.time_step_s);
    cfg.outage_threshold_db = doc.number_or(s, p, "outage_threshold_db", cfg.outage_threshold_db);
    cfg.ping_pong_window_s = doc.number_or(s, p, "ping_pong_window_s", cfg.ping_pong_window_s);
    cfg.threads = static_cast<int>(doc.integer_or(s, p, "threads", cfg.threads));
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error&) {
    throw ParseError("cannot open config file: " + path);
  }
  return parse_config_json(content, path);
}

std::string config_to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["radio"] = {{"carrier_hz", cfg.radio.carrier_hz},
                {"bandwidth_hz", cfg.radio.bandwidth_hz},
                {"tx_power_dbm", cfg.radio.tx_power_dbm},
                {"noise_density_dbm_hz", cfg.radio.noise_density_dbm_hz},
                {"noise_figure_db", cfg.radio.noise_figure_db},
                {"uav_antenna_gain_dbi", cfg.radio.uav_antenna_gain_dbi},
                {"nlos_penalty_db", cfg.radio.nlos_penalty_db}};
  j["antenna"] = {{"element_max_gain_dbi", cfg.element.max_gain_dbi},
                  {"element_hpbw_deg", cfg.element.hpbw_deg},
                  {"side_lobe_floor_db", cfg.element.side_lobe_floor_db},
                  {"front_back_db", cfg.element.front_back_db},
                  {"topology", cfg.topology},
                  {"dz_wavelengths", cfg.dz_wavelengths},
                  {"dy_wavelengths", cfg.dy_wavelengths}};
  j["deployment"] = {{"source", cfg.deployment_source},
                     {"antenna_height_m", cfg.antenna_height_m},
                     {"downtilt_deg", cfg.downtilt_deg},
                     {"max_scan_azimuth_deg", cfg.scan_limits.max_azimuth_deg},
                     {"max_scan_elevation_deg", cfg.scan_limits.max_elevation_deg}};
  j["terrain"] = {{"source", cfg.terrain_source}, {"los_step_m", cfg.los_step_m}};
  j["map"] = {{"x0", cfg.map.x0}, {"y0", cfg.map.y0}, {"width", cfg.map.width}, {"height", cfg.map.height}};
  j["trajectories"] = {{"count", cfg.trajectory_count},
                       {"seed", cfg.seed},
                       {"altitude_agl_m", cfg.altitude_agl_m},
                       {"speed_mps", cfg.speed_mps},
                       {"duration_s", cfg.duration_s},
                       {"altitude_mode", altitude_mode_name(cfg.altitude_mode)},
                       {"file", cfg.trajectory_file}};
  j["beam"] = {{"mode", beam_mode_name(cfg.beam_mode)}, {"update_period_s", cfg.update_period_s}};
  j["a3"] = {{"threshold_db", cfg.a3.threshold_db},
             {"time_to_trigger_s", cfg.a3.time_to_trigger_s},
             {"hysteresis_db", cfg.a3.hysteresis_db},
             {"neighbor_measurement",
              cfg.neighbor_measurement ? assumption_name(*cfg.neighbor_measurement) : ""}};
  j["simulation"] = {{"time_step_s", cfg.time_step_s},
                     {"outage_threshold_db", cfg.outage_threshold_db},
                     {"ping_pong_window_s", cfg.ping_pong_window_s}};
  return j.dump(2);
}

std::string config_fingerprint(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_to_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace uavbeam
