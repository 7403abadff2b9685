#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "support.hpp"
#include "uavbeam/antenna.hpp"
#include "uavbeam/errors.hpp"

using namespace uavbeam;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Independent oracle: one phasor per element at its physical position,
// with the per-element steering phase, no factorisation into S_z * S_y.
double brute_force_af(const ArraySpec& s, const DirectionAngles& d, const SteeringAngles& st) {
  const double lambda = 1.0;
  const double k = 2.0 * kPi / lambda;
  const double th = d.theta_deg * kDeg;
  const double ph = d.phi_deg * kDeg;
  const double th0 = st.theta0_deg * kDeg;
  const double ph0 = st.phi0_deg * kDeg;
  std::complex<double> sum = 0.0;
  for (int m = 0; m < s.m_vertical; ++m) {
    for (int n = 0; n < s.n_horizontal; ++n) {
      const double z = m * s.dz_wavelengths * lambda;
      const double y = n * s.dy_wavelengths * lambda;
      // path difference towards the observation direction minus that towards the steer direction
      const double phase = k * (z * std::cos(th) + y * std::sin(th) * std::sin(ph)) -
                           k * (z * std::cos(th0) + y * std::sin(th0) * std::sin(ph0));
      const double amp = (s.amplitudes_z.empty() ? 1.0 : s.amplitudes_z[m]) *
                         (s.amplitudes_y.empty() ? 1.0 : s.amplitudes_y[n]);
      sum += amp * std::polar(1.0, phase);
    }
  }
  return std::abs(sum);
}

ArraySpec square(int m) { return parse_topology(std::to_string(m) + "x" + std::to_string(m)); }

// Composite gain along the boresight azimuth cut, evaluated directly.
double azimuth_gain(const ArraySpec& s, double phi) { return array_gain_db(s, {90.0, phi}, {90.0, 0.0}); }

// Half-power beamwidth by bisection on the analytic cut: the -3 dB point
// lies between boresight and the first null at asin(1/(N dy)).
double bisect_hpbw(const ArraySpec& s) {
  const double peak = azimuth_gain(s, 0.0);
  double lo = 0.0;
  double hi = s.n_horizontal > 1 ? std::asin(1.0 / (s.n_horizontal * s.dy_wavelengths)) / kDeg - 1e-6 : 179.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (azimuth_gain(s, mid) > peak - 3.0 ? lo : hi) = mid;
  }
  return 2.0 * lo;
}

}  // namespace

TEST_CASE("element_gain_db: boresight, half beamwidth and back lobe") {
  const ElementPattern p;
  CHECK(element_gain_db(p, {90, 0}) == doctest::Approx(8.0));
  CHECK(element_gain_db(p, {90, 32.5}) == doctest::Approx(5.0));
  CHECK(element_gain_db(p, {90, 360 - 32.5}) == doctest::Approx(5.0));
  CHECK(element_gain_db(p, {90, 180}) == doctest::Approx(-22.0));
  CHECK(element_gain_db(p, {57.5, 0}) == doctest::Approx(5.0));
  // both cuts saturated, combined cap still 30 dB
  CHECK(element_gain_db(p, {0, 180}) == doctest::Approx(-22.0));
}

TEST_CASE("steering_phase_factors: worked values") {
  const ArraySpec s = square(4);
  const double lambda = 299792458.0 / 26e9;
  const auto b0 = steering_phase_factors(s, {90, 0}, lambda);
  CHECK(std::abs(b0.beta_z) < 1e-12);
  CHECK(std::abs(b0.beta_y) < 1e-12);
  CHECK(steering_phase_factors(s, {0, 0}, lambda).beta_z == doctest::Approx(-kPi));
  CHECK(steering_phase_factors(s, {90, 90}, lambda).beta_y == doctest::Approx(-kPi));
  CHECK_THROWS_AS(steering_phase_factors(s, {90, 0}, 0.0), DomainError);
  CHECK_THROWS_AS(steering_phase_factors(s, {90, 0}, -1.0), DomainError);
}

TEST_CASE("array_factor: single element, two-element null, steer peak") {
  const ArraySpec one = square(1);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const DirectionAngles d{testing::uniform(rng, 0, 180), testing::uniform(rng, 0, 360)};
    CHECK(array_factor(one, d, {testing::uniform(rng, 30, 150), 0}) == doctest::Approx(1.0));
  }
  ArraySpec two = parse_topology("2x1");
  CHECK(array_factor(two, {0, 0}, {90, 0}) < 1e-12);
  CHECK(array_gain_db(two, {0, 0}, {90, 0}) == doctest::Approx(element_gain_db(two.element, {0, 0}) - 240.0 -
                                                              10.0 * std::log10(2.0)));
  const ArraySpec s88 = square(8);
  CHECK(array_factor(s88, {70, 20}, {70, 20}) == doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("array_factor matches the per-element brute-force sum") {
  std::mt19937_64 rng(20240601);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    ArraySpec s;
    s.m_vertical = testing::uniform_int(rng, 1, 16);
    s.n_horizontal = testing::uniform_int(rng, 1, 16);
    s.dz_wavelengths = testing::uniform(rng, 0.3, 1.0);
    s.dy_wavelengths = testing::uniform(rng, 0.3, 1.0);
    if (i % 2 == 1) {
      for (int m = 0; m < s.m_vertical; ++m) s.amplitudes_z.push_back(testing::uniform(rng, 0.2, 1.5));
      for (int n = 0; n < s.n_horizontal; ++n) s.amplitudes_y.push_back(testing::uniform(rng, 0.2, 1.5));
    }
    const DirectionAngles d{testing::uniform(rng, 0, 180), testing::uniform(rng, 0, 360)};
    const SteeringAngles st{testing::uniform(rng, 0, 180), testing::uniform(rng, 0, 360)};
    const double oracle = brute_force_af(s, d, st);
    const double af = array_factor(s, d, st);
    const auto [sz, sy] = array_factor_sums(s, d, st);
    const double scale = std::max(oracle, 1e-3);
    CHECK(std::abs(af - oracle) <= 1e-9 * scale);
    CHECK(std::abs(std::abs(sz * sy) - oracle) <= 1e-9 * scale);
    ++checked;
  }
  CHECK(checked >= 1000);
}

TEST_CASE("peak property: AF at the steer direction equals M*N") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    ArraySpec s;
    s.m_vertical = testing::uniform_int(rng, 1, 16);
    s.n_horizontal = testing::uniform_int(rng, 1, 16);
    s.dz_wavelengths = testing::uniform(rng, 0.3, 1.0);
    s.dy_wavelengths = testing::uniform(rng, 0.3, 1.0);
    const SteeringAngles st{testing::uniform(rng, 30, 150), testing::uniform(rng, 0, 360)};
    const double mn = s.m_vertical * s.n_horizontal;
    CHECK(std::abs(array_factor(s, {st.theta0_deg, st.phi0_deg}, st) - mn) <= 1e-9 * mn);
  }
}

TEST_CASE("array_gain_db: golden peaks 26.1 and 32.1 dBi") {
  CHECK(std::abs(array_gain_db(square(8), {90, 0}, {90, 0}) - 26.1) <= 0.1);
  CHECK(std::abs(array_gain_db(square(16), {90, 0}, {90, 0}) - 32.1) <= 0.1);
  CHECK(array_gain_db(square(1), {90, 0}, {90, 0}) == doctest::Approx(8.0));
  // closed form 8 + 10 log10(MN)
  CHECK(array_gain_db(square(8), {90, 0}, {90, 0}) == doctest::Approx(8.0 + 10.0 * std::log10(64.0)));
}

TEST_CASE("doubling M and N adds 6 dB of peak gain") {
  const double g4 = array_gain_db(square(4), {90, 0}, {90, 0});
  const double g8 = array_gain_db(square(8), {90, 0}, {90, 0});
  const double g16 = array_gain_db(square(16), {90, 0}, {90, 0});
  CHECK(std::abs(g8 - g4 - 6.0) <= 0.1);
  CHECK(std::abs(g16 - g8 - 6.0) <= 0.1);
  CHECK(g16 - g8 == doctest::Approx(10.0 * std::log10(4.0)));
}

TEST_CASE("max_array_gain_db bounds every direction and steering") {
  std::mt19937_64 rng(8);
  for (const char* topo : {"8x8", "16x4", "1x64", "3x5"}) {
    const ArraySpec s = parse_topology(topo);
    const double bound = max_array_gain_db(s);
    for (int i = 0; i < 500; ++i) {
      const DirectionAngles d{testing::uniform(rng, 0, 180), testing::uniform(rng, 0, 360)};
      const SteeringAngles st{testing::uniform(rng, 0, 180), testing::uniform(rng, 0, 360)};
      CHECK(array_gain_db(s, d, st) <= bound + 1e-9);
    }
  }
}

TEST_CASE("gain is symmetric under phi -> -phi when steering in the phi = 0 plane") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const ArraySpec s = parse_topology(std::to_string(testing::uniform_int(rng, 1, 16)) + "x" +
                                       std::to_string(testing::uniform_int(rng, 1, 16)));
    const SteeringAngles st{testing::uniform(rng, 30, 150), 0.0};
    const double th = testing::uniform(rng, 0, 180);
    const double ph = testing::uniform(rng, 0, 180);
    CHECK(array_gain_db(s, {th, ph}, st) == doctest::Approx(array_gain_db(s, {th, 360.0 - ph}, st)).epsilon(1e-9));
  }
}

TEST_CASE("array frame: boresight, right-hand side and round trip") {
  const SectorOrientation o{120.0, 7.0};
  const auto local = to_array_frame(o, {97.0, 120.0});
  CHECK(local.theta_deg == doctest::Approx(90.0));
  CHECK(wrap_180(local.phi_deg) == doctest::Approx(0.0).epsilon(1e-9));
  const auto right = to_array_frame({0.0, 0.0}, {90.0, 90.0});
  CHECK(right.phi_deg == doctest::Approx(90.0));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const SectorOrientation oi{testing::uniform(rng, 0, 360), testing::uniform(rng, -30, 30)};
    const DirectionAngles g{testing::uniform(rng, 1, 179), testing::uniform(rng, 0, 360)};
    const auto back = to_global_frame(oi, to_array_frame(oi, g));
    CHECK(angular_separation_deg(g, back) < 1e-6);
  }
}

TEST_CASE("validate and parse_topology") {
  CHECK(topology_name(parse_topology("16x4")) == "16x4");
  CHECK(parse_topology("16x4").m_vertical == 16);
  CHECK(parse_topology("16x4").n_horizontal == 4);
  CHECK_THROWS_AS(parse_topology("0x8"), ValidationError);
  CHECK_THROWS_AS(parse_topology("8"), ValidationError);
  CHECK_THROWS_AS(parse_topology("ax8"), ValidationError);
  CHECK_THROWS_AS(parse_topology("8x8x"), ValidationError);
  ArraySpec s = square(2);
  s.dz_wavelengths = 0.0;
  CHECK_THROWS_AS(validate(s), ValidationError);
  s = square(2);
  s.amplitudes_z = {1.0, -1.0};
  CHECK_THROWS_AS(validate(s), ValidationError);
  s = square(2);
  s.amplitudes_y = {1.0};
  CHECK_THROWS_AS(validate(s), ValidationError);
  s = square(2);
  s.element.hpbw_deg = 0.0;
  CHECK_THROWS_AS(validate(s), ValidationError);
  CHECK(parse_plane("azimuth") == Plane::kAzimuth);
  CHECK_THROWS_AS(parse_plane("diagonal"), ValidationError);
}

TEST_CASE("pattern_cut: peak, single element and symmetry") {
  const ArraySpec s = square(8);
  const SteeringAngles st{100.0, 25.0};
  for (Plane plane : {Plane::kAzimuth, Plane::kElevation}) {
    const auto cut = pattern_cut(s, st, plane, 0.5);
    CHECK(cut.size() == 720);
    const double at = cut_angle_of_steer(st, plane);
    const auto hit = std::find_if(cut.begin(), cut.end(), [&](const CutSample& c) { return c.angle_deg == at; });
    REQUIRE(hit != cut.end());
    CHECK(hit->gain_db == doctest::Approx(array_gain_db(s, {st.theta0_deg, st.phi0_deg}, st)));
    const auto dir = cut_direction(st, plane, at);
    CHECK(angular_separation_deg(dir, {st.theta0_deg, st.phi0_deg}) < 1e-9);
    for (std::size_t i = 1; i < cut.size(); ++i) CHECK(cut[i].angle_deg > cut[i - 1].angle_deg);
  }

  // at boresight the element and array peaks coincide
  for (Plane plane : {Plane::kAzimuth, Plane::kElevation}) {
    double best = -1e9;
    for (const auto& c : pattern_cut(s, {90, 0}, plane, 0.5)) best = std::max(best, c.gain_db);
    CHECK(best == doctest::Approx(array_gain_db(s, {90, 0}, {90, 0})));
  }

  const ArraySpec one = square(1);
  for (Plane plane : {Plane::kAzimuth, Plane::kElevation}) {
    for (const auto& c : pattern_cut(one, {90, 0}, plane, 1.0)) {
      CHECK(c.gain_db == doctest::Approx(element_gain_db(one.element, cut_direction({90, 0}, plane, c.angle_deg))));
    }
  }
  // boresight elevation cut of one element: theta = 90 - angle in front
  const auto el = pattern_cut(one, {90, 0}, Plane::kElevation, 0.5);
  for (const auto& c : el) {
    if (std::abs(c.angle_deg) <= 89.0) {
      CHECK(c.gain_db == doctest::Approx(element_gain_db(one.element, {90.0 - c.angle_deg, 0.0})));
    }
  }

  for (Plane plane : {Plane::kAzimuth, Plane::kElevation}) {
    const auto cut = pattern_cut(square(8), {90, 0}, plane, 0.25);
    for (const auto& a : cut) {
      if (a.angle_deg <= 0.0 || a.angle_deg >= 180.0) continue;
      const auto mirror = std::find_if(cut.begin(), cut.end(), [&](const CutSample& b) {
        return std::abs(b.angle_deg + a.angle_deg) < 1e-9;
      });
      REQUIRE(mirror != cut.end());
      CHECK(std::abs(mirror->gain_db - a.gain_db) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(pattern_cut(s, st, Plane::kAzimuth, 0.0), DomainError);
}

TEST_CASE("half_power_beamwidth_deg: single element is the element beamwidth") {
  CHECK(half_power_beamwidth_deg(square(1), {90, 0}, Plane::kAzimuth) == doctest::Approx(65.0).epsilon(1e-4));
  CHECK(half_power_beamwidth_deg(square(1), {90, 0}, Plane::kElevation) == doctest::Approx(65.0).epsilon(1e-4));
}

TEST_CASE("half_power_beamwidth_deg: ordering and golden values") {
  for (Plane plane : {Plane::kAzimuth, Plane::kElevation}) {
    const double h4 = half_power_beamwidth_deg(square(4), {90, 0}, plane);
    const double h8 = half_power_beamwidth_deg(square(8), {90, 0}, plane);
    const double h16 = half_power_beamwidth_deg(square(16), {90, 0}, plane);
    CHECK(h16 < h8);
    CHECK(h8 < h4);
  }
  // scan against bisection on the analytic cut
  const double v8 = half_power_beamwidth_deg(square(8), {90, 0}, Plane::kAzimuth);
  const double v16 = half_power_beamwidth_deg(square(16), {90, 0}, Plane::kAzimuth);
  CHECK(std::abs(v8 - bisect_hpbw(square(8))) < 0.01);
  CHECK(std::abs(v16 - bisect_hpbw(square(16))) < 0.01);
  // frozen goldens
  CHECK(v8 == doctest::Approx(12.557996).epsilon(1e-6));
  CHECK(v16 == doctest::Approx(6.320705).epsilon(1e-6));
  CHECK(half_power_beamwidth_deg(square(8), {90, 0}, Plane::kElevation) == doctest::Approx(v8).epsilon(1e-6));
}

TEST_CASE("half_power_beamwidth_deg: no lobe is an analysis error") {
  ArraySpec wide = square(1);
  wide.element.hpbw_deg = 5000.0;
  CHECK_THROWS_AS(half_power_beamwidth_deg(wide, {90, 0}, Plane::kAzimuth), AnalysisError);
}
