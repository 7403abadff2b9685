#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "uavbeam/errors.hpp"
#include "uavbeam/mobility.hpp"
#include "uavbeam/text_io.hpp"

using namespace uavbeam;

namespace {

TerrainGrid flat(double h = 0.0) { return TerrainGrid::flat(h, -2000, -2000, 4000, 4000); }

TrajectoryParams defaults() { return {}; }

bool same(const Trajectory& a, const Trajectory& b) {
  return a.id == b.id && a.start == b.start && a.heading_deg == b.heading_deg && a.speed_mps == b.speed_mps &&
         a.altitude_agl_m == b.altitude_agl_m && a.duration_s == b.duration_s && a.truncated == b.truncated;
}

}  // namespace

TEST_CASE("generate_trajectories: same seed gives identical sets") {
  const auto a = generate_trajectories(defaults(), flat());
  // unrelated work in between must not matter
  TrajectoryParams other = defaults();
  other.seed = 77;
  generate_trajectories(other, flat());
  const auto b = generate_trajectories(defaults(), flat());
  REQUIRE(a.trajectories.size() == b.trajectories.size());
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) CHECK(same(a.trajectories[i], b.trajectories[i]));
  const auto c = generate_trajectories(other, flat());
  CHECK_FALSE(same(a.trajectories[0], c.trajectories[0]));
}

TEST_CASE("generate_trajectories: 200 paths of 1680 m inside the map") {
  const auto set = generate_trajectories(defaults(), flat());
  CHECK_FALSE(set.margin_fallback);
  REQUIRE(set.trajectories.size() == 200);
  for (const auto& t : set.trajectories) {
    CHECK(t.speed_mps * t.duration_s == doctest::Approx(1680.0));
    CHECK_FALSE(t.truncated);
    const auto end = step(t, t.duration_s).position;
    CHECK(horizontal_distance(t.start, end) == doctest::Approx(1680.0));
    for (const auto& p : {t.start, end}) {
      CHECK(p.x >= -2000.0);
      CHECK(p.x <= 2000.0);
      CHECK(p.y >= -2000.0);
      CHECK(p.y <= 2000.0);
    }
    CHECK(t.heading_deg >= 0.0);
    CHECK(t.heading_deg < 360.0);
  }
}

TEST_CASE("generate_trajectories: headings and midpoints spread over their ranges") {
  TrajectoryParams p = defaults();
  p.count = 4000;
  const auto set = generate_trajectories(p, flat());
  int quadrant[4] = {0, 0, 0, 0};
  double mx = 0.0;
  for (const auto& t : set.trajectories) {
    quadrant[static_cast<int>(t.heading_deg / 90.0)]++;
    mx += step(t, t.duration_s / 2).position.x;
  }
  for (int q : quadrant) CHECK(std::abs(q - 1000) < 150);
  CHECK(std::abs(mx / 4000.0) < 60.0);
}

TEST_CASE("generate_trajectories: altitude above flat ground") {
  TrajectoryParams p = defaults();
  p.count = 20;
  const auto set = generate_trajectories(p, flat(30.0));
  for (const auto& t : set.trajectories) {
    for (double s = 0.0; s <= t.duration_s; s += 7.3) CHECK(step(t, s).position.z == doctest::Approx(70.0));
  }
}

TEST_CASE("generate_trajectories: small map falls back to truncated paths") {
  TrajectoryParams p = defaults();
  p.area = {0, 0, 1000, 1000};
  p.count = 50;
  const auto set = generate_trajectories(p, TerrainGrid::flat(0, 0, 0, 1000, 1000));
  CHECK(set.margin_fallback);
  int truncated = 0;
  for (const auto& t : set.trajectories) {
    truncated += t.truncated ? 1 : 0;
    CHECK(t.duration_s <= 120.0);
    const auto end = step(t, t.duration_s).position;
    CHECK(end.x >= -1e-6);
    CHECK(end.x <= 1000.0 + 1e-6);
    CHECK(end.y >= -1e-6);
    CHECK(end.y <= 1000.0 + 1e-6);
  }
  CHECK(truncated == 50);
}

TEST_CASE("generate_trajectories: invalid parameters") {
  TrajectoryParams p = defaults();
  p.count = 0;
  CHECK_THROWS_AS(generate_trajectories(p, flat()), DomainError);
  p = defaults();
  p.speed_mps = 0.0;
  CHECK_THROWS_AS(generate_trajectories(p, flat()), DomainError);
  p = defaults();
  p.duration_s = -1.0;
  CHECK_THROWS_AS(generate_trajectories(p, flat()), DomainError);
}

TEST_CASE("step: start, due north and 0.1 s increments") {
  Trajectory t;
  t.start = {10, 20, 40};
  t.heading_deg = 0.0;
  CHECK(step(t, 0.0).position == t.start);
  const auto ten = step(t, 10.0);
  CHECK(ten.position.x == doctest::Approx(10.0));
  CHECK(ten.position.y == doctest::Approx(160.0));
  CHECK(ten.velocity.y == doctest::Approx(14.0));
  CHECK(std::abs(ten.velocity.x) < 1e-12);
  t.heading_deg = 33.0;
  for (double s = 0.0; s < 100.0; s += 3.7) {
    CHECK(horizontal_distance(step(t, s).position, step(t, s + 0.1).position) == doctest::Approx(1.4).epsilon(1e-9));
  }
  CHECK_THROWS_AS(step(t, -0.01), DomainError);
  CHECK_THROWS_AS(step(t, 120.01), DomainError);
}

TEST_CASE("step: positions are collinear in the horizontal plane") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    Trajectory t;
    t.start = {testing::uniform(rng, -1000, 1000), testing::uniform(rng, -1000, 1000), 40};
    t.heading_deg = testing::uniform(rng, 0, 360);
    const auto a = step(t, testing::uniform(rng, 0, 120)).position;
    const auto b = step(t, testing::uniform(rng, 0, 120)).position;
    // cross product of (a - start) and (b - start), divided by |b - start|, is the off-line distance
    const double ax = a.x - t.start.x, ay = a.y - t.start.y;
    const double bx = b.x - t.start.x, by = b.y - t.start.y;
    const double off = std::abs(ax * by - ay * bx) / std::max(1.0, std::hypot(bx, by));
    CHECK(off <= 1e-9);
  }
}

TEST_CASE("step: terrain-following altitude") {
  const TerrainGrid slope(0.0, 0.0, 100.0, 2, 2, {0, 100, 0, 100});
  Trajectory t;
  t.start = {0, 50, 40};
  t.heading_deg = 90.0;
  t.speed_mps = 10.0;
  t.duration_s = 10.0;
  t.altitude_mode = AltitudeMode::kTerrainFollowing;
  CHECK(step(t, 5.0, &slope).position.z == doctest::Approx(90.0));
  CHECK_THROWS_AS(step(t, 5.0), LogicError);
  t.altitude_mode = AltitudeMode::kConstant;
  CHECK(step(t, 5.0, &slope).position.z == doctest::Approx(40.0));
  CHECK(parse_altitude_mode("terrain-following") == AltitudeMode::kTerrainFollowing);
  CHECK_THROWS_AS(parse_altitude_mode("bouncy"), ValidationError);
}

TEST_CASE("truncate_to_area cuts at the boundary") {
  Trajectory t;
  t.start = {0, 0, 40};
  t.heading_deg = 90.0;
  const auto cut = truncate_to_area(t, {-100, -100, 200, 200});
  CHECK(cut.truncated);
  CHECK(cut.duration_s == doctest::Approx(100.0 / 14.0));
  const auto kept = truncate_to_area(t, {-2000, -2000, 4000, 4000});
  CHECK_FALSE(kept.truncated);
  CHECK(kept.duration_s == 120.0);
}

TEST_CASE("trajectory CSV round trip") {
  TrajectoryParams p = defaults();
  p.count = 25;
  const auto set = generate_trajectories(p, flat(15.0));
  const std::string csv = format_trajectories_csv(set.trajectories);
  CHECK(csv.rfind("id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n", 0) == 0);
  const auto back = parse_trajectories_csv(csv, "t.csv", flat(15.0));
  REQUIRE(back.size() == set.trajectories.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(same(back[i], set.trajectories[i]));
  CHECK(format_trajectories_csv(back) == csv);

  testing::TempDir dir("traj");
  text::write_file(dir.file("t.csv"), csv);
  CHECK(load_trajectories_csv(dir.file("t.csv"), flat(15.0)).size() == 25);
  CHECK_THROWS_AS(load_trajectories_csv(dir.file("none.csv"), flat()), ParseError);
  CHECK_THROWS_AS(parse_trajectories_csv("id,x\n", "t.csv", flat()), ParseError);
  CHECK_THROWS_AS(
      parse_trajectories_csv("id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n1,0,0,0,0,40,10\n", "t.csv",
                             flat()),
      ParseError);
  CHECK_THROWS_AS(
      parse_trajectories_csv("id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n1,0,0,0,14,40\n", "t.csv",
                             flat()),
      ParseError);
  CHECK_THROWS_AS(
      parse_trajectories_csv("id,start_x,start_y,heading_deg,speed,altitude_agl,duration\n1,9e9,0,0,14,40,10\n",
                             "t.csv", flat()),
      ParseError);
}
