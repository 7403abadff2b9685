#include "uavbeam/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "uavbeam/errors.hpp"

namespace uavbeam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = 180.0 / kPi;
constexpr double kRad = kPi / 180.0;

double sum_squares(const std::vector<double>& v, int count) {
  if (v.empty()) return static_cast<double>(count);
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

double sum_abs(const std::vector<double>& v, int count) {
  if (v.empty()) return static_cast<double>(count);
  double s = 0.0;
  for (double a : v) s += std::abs(a);
  return s;
}

// |sum_{i<count} e^{j i psi}|
double dirichlet(int count, double psi) {
  const double den = std::sin(0.5 * psi);
  if (std::abs(den) < 1e-12) return static_cast<double>(count);
  return std::abs(std::sin(0.5 * count * psi) / den);
}

std::complex<double> linear_sum(const std::vector<double>& amps, int count, double psi) {
  std::complex<double> s{0.0, 0.0};
  for (int i = 0; i < count; ++i) {
    const double a = amps.empty() ? 1.0 : amps[static_cast<std::size_t>(i)];
    s += std::polar(a, static_cast<double>(i) * psi);
  }
  return s;
}

struct Phases {
  double psi_z;
  double psi_y;
};

Phases phases(const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer) {
  const auto beta = steering_phase_factors(spec, steer, 1.0);
  const double th = dir.theta_deg * kRad;
  const double ph = dir.phi_deg * kRad;
  const double kdz = 2.0 * kPi * spec.dz_wavelengths;
  const double kdy = 2.0 * kPi * spec.dy_wavelengths;
  return {kdz * std::cos(th) + beta.beta_z, kdy * std::sin(th) * std::sin(ph) + beta.beta_y};
}

}  // namespace

void validate(const ArraySpec& spec) {
  std::ostringstream err;
  if (spec.m_vertical < 1) err << "m_vertical must be >= 1; ";
  if (spec.n_horizontal < 1) err << "n_horizontal must be >= 1; ";
  if (!(spec.dz_wavelengths > 0.0)) err << "dz must be > 0; ";
  if (!(spec.dy_wavelengths > 0.0)) err << "dy must be > 0; ";
  if (!(spec.element.hpbw_deg > 0.0)) err << "element hpbw must be > 0; ";
  if (!(spec.element.side_lobe_floor_db > 0.0)) err << "element side-lobe floor must be > 0; ";
  if (!(spec.element.front_back_db > 0.0)) err << "element front-back ratio must be > 0; ";
  if (!spec.amplitudes_z.empty() &&
      spec.amplitudes_z.size() != static_cast<std::size_t>(std::max(spec.m_vertical, 0))) {
    err << "amplitudes_z must have m_vertical entries; ";
  }
  if (!spec.amplitudes_y.empty() &&
      spec.amplitudes_y.size() != static_cast<std::size_t>(std::max(spec.n_horizontal, 0))) {
    err << "amplitudes_y must have n_horizontal entries; ";
  }
  for (double a : spec.amplitudes_z) {
    if (!(a > 0.0)) err << "amplitudes must be > 0; ";
  }
  for (double a : spec.amplitudes_y) {
    if (!(a > 0.0)) err << "amplitudes must be > 0; ";
  }
  const std::string msg = err.str();
  if (!msg.empty()) {
    throw ValidationError("ArraySpec: " + msg.substr(0, msg.size() - 2));
  }
}

ArraySpec parse_topology(const std::string& text, const ElementPattern& element) {
  const auto x = text.find_first_of("xX");
  auto bad = [&] { return ValidationError("invalid array topology '" + text + "', expected MxN"); };
  if (x == std::string::npos || x == 0 || x + 1 >= text.size()) throw bad();
  ArraySpec spec;
  try {
    std::size_t used = 0;
    spec.m_vertical = std::stoi(text.substr(0, x), &used);
    if (used != x) throw bad();
    spec.n_horizontal = std::stoi(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  spec.element = element;
  validate(spec);
  return spec;
}

std::string topology_name(const ArraySpec& spec) {
  return std::to_string(spec.m_vertical) + "x" + std::to_string(spec.n_horizontal);
}

DirectionAngles to_array_frame(const SectorOrientation& orientation, const DirectionAngles& global) {
  const auto v = to_unit_vector(global);
  const double az = orientation.boresight_azimuth_deg * kRad;
  const double tilt = orientation.downtilt_deg * kRad;
  const double fwd = v.e * std::sin(az) + v.n * std::cos(az);
  const double right = v.e * std::cos(az) - v.n * std::sin(az);
  const double x = std::cos(tilt) * fwd - std::sin(tilt) * v.u;
  const double z = std::sin(tilt) * fwd + std::cos(tilt) * v.u;
  DirectionAngles out;
  out.theta_deg = std::acos(std::clamp(z, -1.0, 1.0)) * kDeg;
  out.phi_deg = (x == 0.0 && right == 0.0) ? 0.0 : wrap_360(std::atan2(right, x) * kDeg);
  return out;
}

DirectionAngles to_global_frame(const SectorOrientation& orientation, const DirectionAngles& local) {
  const double th = local.theta_deg * kRad;
  const double ph = local.phi_deg * kRad;
  const double x = std::sin(th) * std::cos(ph);
  const double right = std::sin(th) * std::sin(ph);
  const double z = std::cos(th);
  const double az = orientation.boresight_azimuth_deg * kRad;
  const double tilt = orientation.downtilt_deg * kRad;
  const double fwd = std::cos(tilt) * x + std::sin(tilt) * z;
  const double up = -std::sin(tilt) * x + std::cos(tilt) * z;
  UnitVector g{fwd * std::sin(az) + right * std::cos(az), fwd * std::cos(az) - right * std::sin(az),
               up};
  return from_unit_vector(g);
}

double element_gain_db(const ElementPattern& p, const DirectionAngles& local) {
  const double v = (local.theta_deg - 90.0) / p.hpbw_deg;
  const double h = wrap_180(local.phi_deg) / p.hpbw_deg;
  const double att_v = std::min(12.0 * v * v, p.side_lobe_floor_db);
  const double att_h = std::min(12.0 * h * h, p.side_lobe_floor_db);
  return p.max_gain_dbi - std::min(att_v + att_h, p.front_back_db);
}

PhaseFactors steering_phase_factors(const ArraySpec& spec, const SteeringAngles& steer,
                                    double wavelength_m) {
  if (!(wavelength_m > 0.0)) {
    throw DomainError("steering_phase_factors: wavelength must be > 0");
  }
  const double k = 2.0 * kPi / wavelength_m;
  const double dz = spec.dz_wavelengths * wavelength_m;
  const double dy = spec.dy_wavelengths * wavelength_m;
  const double th0 = steer.theta0_deg * kRad;
  const double ph0 = steer.phi0_deg * kRad;
  return {-k * dz * std::cos(th0), -k * dy * std::sin(th0) * std::sin(ph0)};
}

std::pair<std::complex<double>, std::complex<double>> array_factor_sums(
    const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer) {
  const auto p = phases(spec, dir, steer);
  return {linear_sum(spec.amplitudes_z, spec.m_vertical, p.psi_z),
          linear_sum(spec.amplitudes_y, spec.n_horizontal, p.psi_y)};
}

double array_factor(const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer) {
  if (spec.uniform()) {
    const auto p = phases(spec, dir, steer);
    return dirichlet(spec.m_vertical, p.psi_z) * dirichlet(spec.n_horizontal, p.psi_y);
  }
  auto [sz, sy] = array_factor_sums(spec, dir, steer);
  return std::abs(sz * sy);
}

double array_normalization_db(const ArraySpec& spec) {
  return 10.0 * std::log10(sum_squares(spec.amplitudes_z, spec.m_vertical) *
                           sum_squares(spec.amplitudes_y, spec.n_horizontal));
}

double array_gain_db(const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer) {
  const double af = std::max(array_factor(spec, dir, steer), kNullFloor);
  return element_gain_db(spec.element, dir) + 20.0 * std::log10(af) - array_normalization_db(spec);
}

double max_array_gain_db(const ArraySpec& spec) {
  const double peak = sum_abs(spec.amplitudes_z, spec.m_vertical) *
                      sum_abs(spec.amplitudes_y, spec.n_horizontal);
  return spec.element.max_gain_dbi + 20.0 * std::log10(peak) - array_normalization_db(spec);
}

const char* plane_name(Plane plane) { return plane == Plane::kAzimuth ? "azimuth" : "elevation"; }

Plane parse_plane(const std::string& text) {
  if (text == "azimuth" || text == "az") return Plane::kAzimuth;
  if (text == "elevation" || text == "el") return Plane::kElevation;
  throw ValidationError("unknown plane '" + text + "', expected azimuth or elevation");
}

DirectionAngles cut_direction(const SteeringAngles& steer, Plane plane, double angle_deg) {
  if (plane == Plane::kAzimuth) {
    return {steer.theta0_deg, wrap_360(angle_deg)};
  }
  const double e = angle_deg * kRad;
  const double ph0 = steer.phi0_deg * kRad;
  const double x = std::cos(e) * std::cos(ph0);
  const double y = std::cos(e) * std::sin(ph0);
  const double z = std::sin(e);
  DirectionAngles out;
  out.theta_deg = std::acos(std::clamp(z, -1.0, 1.0)) * kDeg;
  out.phi_deg = (x == 0.0 && y == 0.0) ? 0.0 : wrap_360(std::atan2(y, x) * kDeg);
  return out;
}

double cut_angle_of_steer(const SteeringAngles& steer, Plane plane) {
  return plane == Plane::kAzimuth ? wrap_180(steer.phi0_deg) : 90.0 - steer.theta0_deg;
}

std::vector<CutSample> pattern_cut(const ArraySpec& spec, const SteeringAngles& steer, Plane plane,
                                   double resolution_deg) {
  if (!(resolution_deg > 0.0) || resolution_deg > 360.0) {
    throw DomainError("pattern_cut: resolution must be in (0, 360]");
  }
  const double origin = cut_angle_of_steer(steer, plane);
  const auto n = static_cast<std::size_t>(std::ceil(360.0 / resolution_deg - 1e-9));
  std::vector<CutSample> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = wrap_180(origin + static_cast<double>(j) * resolution_deg);
    out.push_back({a, array_gain_db(spec, cut_direction(steer, plane, a), steer)});
  }
  std::sort(out.begin(), out.end(),
            [](const CutSample& l, const CutSample& r) { return l.angle_deg < r.angle_deg; });
  return out;
}

double half_power_beamwidth_deg(const ArraySpec& spec, const SteeringAngles& steer, Plane plane,
                                double resolution_deg) {
  const auto cut = pattern_cut(spec, steer, plane, resolution_deg);
  const std::size_t n = cut.size();
  std::size_t peak = 0;
  double lowest = cut[0].gain_db;
  for (std::size_t i = 1; i < n; ++i) {
    if (cut[i].gain_db > cut[peak].gain_db) peak = i;
    lowest = std::min(lowest, cut[i].gain_db);
  }
  const double level = cut[peak].gain_db - 3.0;
  if (!(lowest < level)) {
    throw AnalysisError(std::string("half_power_beamwidth_deg: no main lobe in the ") +
                        plane_name(plane) + " cut");
  }
  // Walk outward from the peak to the first sample below the half-power level
  // and interpolate the crossing linearly between the bracketing samples.
  auto edge = [&](int dir) {
    std::size_t prev = peak;
    for (std::size_t steps = 1; steps < n; ++steps) {
      const auto offset = dir > 0 ? steps : n - steps;
      const std::size_t cur = (peak + offset) % n;
      if (cut[cur].gain_db < level) {
        const double g0 = cut[prev].gain_db;
        const double g1 = cut[cur].gain_db;
        const double frac = (g0 - level) / (g0 - g1);
        return (static_cast<double>(steps - 1) + frac) * resolution_deg;
      }
      prev = cur;
    }
    throw AnalysisError("half_power_beamwidth_deg: main lobe spans the whole cut");
  };
  return edge(+1) + edge(-1);
}

}  // namespace uavbeam
