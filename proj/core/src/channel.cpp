#include "uavbeam/channel.hpp"

#include <cmath>
#include <sstream>

#include "uavbeam/errors.hpp"

namespace uavbeam {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
// 20 log10(4 pi / c)
constexpr double kFsplConstantDb = -147.55;
}  // namespace

double RadioConfig::wavelength_m() const { return kSpeedOfLight / carrier_hz; }

void validate(const RadioConfig& cfg) {
  if (!(cfg.carrier_hz > 0.0)) throw ValidationError("radio.carrier_hz must be > 0");
  if (!(cfg.bandwidth_hz > 0.0)) throw ValidationError("radio.bandwidth_hz must be > 0");
  if (!(cfg.nlos_penalty_db >= 0.0)) throw ValidationError("radio.nlos_penalty_db must be >= 0");
  for (double v : {cfg.tx_power_dbm, cfg.noise_density_dbm_hz, cfg.noise_figure_db,
                   cfg.uav_antenna_gain_dbi}) {
    if (!std::isfinite(v)) throw ValidationError("radio: link-budget terms must be finite");
  }
}

double pathloss_db(const RadioConfig& cfg, double distance_m, bool los,
                   std::vector<std::string>* warnings) {
  double d = distance_m;
  if (!(d >= 1.0)) {
    if (warnings) {
      std::ostringstream os;
      os << "pathloss: distance " << distance_m << " m clamped to 1 m";
      warnings->push_back(os.str());
    }
    d = 1.0;
  }
  const double fspl = 20.0 * std::log10(d) + 20.0 * std::log10(cfg.carrier_hz) + kFsplConstantDb;
  return los ? fspl : fspl + cfg.nlos_penalty_db;
}

double noise_power_dbm(const RadioConfig& cfg) {
  return cfg.noise_density_dbm_hz + 10.0 * std::log10(cfg.bandwidth_hz) + cfg.noise_figure_db;
}

double rx_power_dbm(const RadioConfig& cfg, double tx_gain_db, double distance_m, bool los,
                    std::vector<std::string>* warnings) {
  return cfg.tx_power_dbm + tx_gain_db + cfg.uav_antenna_gain_dbi -
         pathloss_db(cfg, distance_m, los, warnings);
}

double snr_db(const RadioConfig& cfg, double tx_gain_db, double distance_m, bool los,
              std::vector<std::string>* warnings) {
  return rx_power_dbm(cfg, tx_gain_db, distance_m, los, warnings) - noise_power_dbm(cfg);
}

}  // namespace uavbeam
