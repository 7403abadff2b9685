#pragma once

#include <string>
#include <vector>

namespace uavbeam {

/// Link-budget parameters. Defaults are the 26 GHz mmWave configuration.
struct RadioConfig {
  double carrier_hz = 26e9;
  double bandwidth_hz = 400e6;
  double tx_power_dbm = 18.0;
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double uav_antenna_gain_dbi = 0.0;
  double nlos_penalty_db = 20.0;

  double wavelength_m() const;
};

void validate(const RadioConfig& cfg);

/// Free-space pathloss plus a flat penalty when the path is obstructed.
/// Distances below 1 m are clamped to 1 m; if `warnings` is given a note is appended.
double pathloss_db(const RadioConfig& cfg, double distance_m, bool los,
                   std::vector<std::string>* warnings = nullptr);

/// Thermal noise over the bandwidth plus receiver noise figure.
double noise_power_dbm(const RadioConfig& cfg);

/// Received power before noise: tx + tx antenna gain + UAV antenna gain - pathloss.
double rx_power_dbm(const RadioConfig& cfg, double tx_gain_db, double distance_m, bool los,
                    std::vector<std::string>* warnings = nullptr);

double snr_db(const RadioConfig& cfg, double tx_gain_db, double distance_m, bool los,
              std::vector<std::string>* warnings = nullptr);

}  // namespace uavbeam
