#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "uavbeam/terrain.hpp"

namespace uavbeam {

/// Parabolic-in-dB patch element. Vertical and horizontal cuts each attenuate
/// as 12 (offset / hpbw)^2, capped at the side-lobe floor; the sum is capped
/// at the front-to-back ratio.
struct ElementPattern {
  double max_gain_dbi = 8.0;
  double hpbw_deg = 65.0;
  double side_lobe_floor_db = 30.0;
  double front_back_db = 30.0;
};

/// Uniform rectangular array in the array's y-z plane, boresight along +x.
/// m_vertical elements stacked on z, n_horizontal on y. Excitations are
/// separable: element (m, n) is driven with amplitudes_z[m] * amplitudes_y[n].
/// Empty amplitude vectors mean uniform unit excitation.
struct ArraySpec {
  int m_vertical = 1;
  int n_horizontal = 1;
  double dz_wavelengths = 0.5;
  double dy_wavelengths = 0.5;
  ElementPattern element{};
  std::vector<double> amplitudes_z{};
  std::vector<double> amplitudes_y{};

  bool uniform() const { return amplitudes_z.empty() && amplitudes_y.empty(); }
  int element_count() const { return m_vertical * n_horizontal; }
};

/// Throws ValidationError when the spec breaks an invariant.
void validate(const ArraySpec& spec);

/// Builds an M x N spec from text such as "8x8" (vertical x horizontal).
ArraySpec parse_topology(const std::string& text, const ElementPattern& element = {});
std::string topology_name(const ArraySpec& spec);

/// Desired beam direction in the array frame.
struct SteeringAngles {
  double theta0_deg = 90.0;
  double phi0_deg = 0.0;
};

/// Mechanical orientation of a sector panel.
struct SectorOrientation {
  double boresight_azimuth_deg = 0.0;
  double downtilt_deg = 0.0;
};

/// Rotates a global direction into the array frame of a panel, where the
/// boresight is (theta 90, phi 0) and phi grows towards the panel's right.
DirectionAngles to_array_frame(const SectorOrientation& orientation, const DirectionAngles& global);
/// Inverse of to_array_frame.
DirectionAngles to_global_frame(const SectorOrientation& orientation, const DirectionAngles& local);

/// Element gain in dBi for a direction given in the array frame.
double element_gain_db(const ElementPattern& p, const DirectionAngles& local);

struct PhaseFactors {
  double beta_z = 0.0;
  double beta_y = 0.0;
};

/// Progressive phase shifts that steer the main lobe to `steer`.
PhaseFactors steering_phase_factors(const ArraySpec& spec, const SteeringAngles& steer,
                                    double wavelength_m);

/// The two linear sums S_z and S_y for a direction and steering.
std::pair<std::complex<double>, std::complex<double>> array_factor_sums(
    const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer);

/// |S_z * S_y|. Uniform arrays use the closed Dirichlet-kernel form.
double array_factor(const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer);

inline constexpr double kNullFloor = 1e-12;

/// 10 log10(sum I_z^2 * sum I_y^2): the array factor normalization that makes
/// a steered uniform M x N array add 10 log10(MN) dB over one element.
double array_normalization_db(const ArraySpec& spec);

/// Composite gain in dBi for a direction in the array frame.
double array_gain_db(const ArraySpec& spec, const DirectionAngles& dir, const SteeringAngles& steer);

/// Upper bound of array_gain_db over all directions and steerings.
double max_array_gain_db(const ArraySpec& spec);

enum class Plane { kAzimuth, kElevation };

const char* plane_name(Plane plane);
Plane parse_plane(const std::string& text);

/// Array-frame direction of a point on a pattern cut. The azimuth cut runs
/// over phi at the steering theta; the elevation cut runs around the vertical
/// plane through the steering azimuth, angle measured up from the horizon.
DirectionAngles cut_direction(const SteeringAngles& steer, Plane plane, double angle_deg);
/// Position of the steering direction on its own cut.
double cut_angle_of_steer(const SteeringAngles& steer, Plane plane);

struct CutSample {
  double angle_deg = 0.0;
  double gain_db = 0.0;
};

/// Full 360-degree cut through the steering direction, sorted by angle in
/// (-180, 180]. The steering direction is always one of the samples.
std::vector<CutSample> pattern_cut(const ArraySpec& spec, const SteeringAngles& steer, Plane plane,
                                   double resolution_deg);

inline constexpr double kHpbwResolutionDeg = 0.01;

/// Width of the main lobe between its -3 dB points, from a numeric scan.
double half_power_beamwidth_deg(const ArraySpec& spec, const SteeringAngles& steer, Plane plane,
                                double resolution_deg = kHpbwResolutionDeg);

}  // namespace uavbeam
