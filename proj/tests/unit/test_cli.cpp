#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "uavbeam/engine.hpp"
#include "uavbeam/text_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "uavbeam");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = uavbeam::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kSmall = R"({
  "deployment": {"source": "hex:1:500"},
  "map": {"x0": -1000, "y0": -1000, "width": 2000, "height": 2000},
  "trajectories": {"count": 4, "duration_s": 40}
})";

std::string read(const fs::path& p) { return uavbeam::text::read_file(p.string()); }

}  // namespace

TEST_CASE("cli run: minimal config writes the report") {
  testing::TempDir dir("cli_run");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  const auto r = invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("out")});
  CHECK(r.code == 0);
  CHECK(r.out.find("fingerprint=") != std::string::npos);
  for (const char* f : {"report.json", "metrics.csv", "handovers.csv", "ecdf_outage.csv", "ecdf_handover_rate.csv"}) {
    CHECK(fs::exists(dir.path() / "out" / f));
  }
  CHECK_FALSE(fs::exists(dir.path() / "out" / "ecdf_outage.svg"));
  CHECK(invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("plots"), "--plots"}).code == 0);
  CHECK(fs::exists(dir.path() / "plots" / "ecdf_outage.svg"));
}

TEST_CASE("cli run: seed override is echoed in report.json") {
  testing::TempDir dir("cli_seed");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  REQUIRE(invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("out"), "--seed", "7"}).code == 0);
  const auto j = nlohmann::json::parse(read(dir.path() / "out" / "report.json"));
  CHECK(j["seed"] == 7);
  CHECK(j["config"]["trajectories"]["seed"] == 7);
}

TEST_CASE("cli run: identical invocations give byte-identical CSVs") {
  testing::TempDir dir("cli_bytes");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  REQUIRE(invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("a")}).code == 0);
  REQUIRE(invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("b"), "--threads", "2"}).code == 0);
  for (const char* f : {"metrics.csv", "handovers.csv", "ecdf_outage.csv", "ecdf_handover_rate.csv", "trajectories.csv",
                        "report.json"}) {
    CHECK(read(dir.path() / "a" / f) == read(dir.path() / "b" / f));
  }
}

TEST_CASE("cli run: errors name the path or field") {
  testing::TempDir dir("cli_err");
  uavbeam::text::write_file(dir.file("t.json"), R"({"terrain": {"source": "/no/such/terrain.csv"}})");
  auto r = invoke({"run", "-c", dir.file("t.json"), "-o", dir.file("out")});
  CHECK(r.code != 0);
  CHECK(r.err.find("/no/such/terrain.csv") != std::string::npos);

  uavbeam::text::write_file(dir.file("f.json"), "{\n  \"a3\": {\"threshold_db\": \"big\"}\n}\n");
  r = invoke({"run", "-c", dir.file("f.json"), "-o", dir.file("out")});
  CHECK(r.code != 0);
  CHECK(r.err.find("a3.threshold_db") != std::string::npos);
  CHECK(r.err.find("f.json:2") != std::string::npos);

  r = invoke({"run", "-c", dir.file("missing.json"), "-o", dir.file("out")});
  CHECK(r.code != 0);
  CHECK(r.err.find("missing.json") != std::string::npos);
}

TEST_CASE("cli: usage errors and help") {
  CHECK(invoke({}).code == uavbeam::cli::kExitUsage);
  CHECK(invoke({"fly"}).code == uavbeam::cli::kExitUsage);
  CHECK(invoke({"run"}).code == uavbeam::cli::kExitUsage);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  for (const auto& k : uavbeam::config_keys()) CHECK_MESSAGE(help.out.find(k.key) != std::string::npos, k.key);
  CHECK(help.out.find("0.1") != std::string::npos);
}

TEST_CASE("cli sweep: topology fan-out and comparison table") {
  testing::TempDir dir("cli_sweep");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  const auto r = invoke({"sweep", "-c", dir.file("c.json"), "-o", dir.file("out"), "--axis", "topology", "--values",
                         "1x64,8x8,16x4,64x1"});
  REQUIRE(r.code == 0);
  for (const char* sub : {"topology_1x64", "topology_8x8", "topology_16x4", "topology_64x1"}) {
    CHECK(fs::is_directory(dir.path() / "out" / sub));
  }
  const std::string table = read(dir.path() / "out" / "comparison.csv");
  CHECK(uavbeam::text::split_lines(table).size() == 5);
}

TEST_CASE("cli sweep: update periods share one trajectory set") {
  testing::TempDir dir("cli_period");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  REQUIRE(invoke({"sweep", "-c", dir.file("c.json"), "-o", dir.file("out"), "--axis", "update-period", "--values",
                  "0.1,0.2,0.5"})
              .code == 0);
  const std::string base = read(dir.path() / "out" / "update-period_0.1" / "trajectories.csv");
  CHECK(read(dir.path() / "out" / "update-period_0.2" / "trajectories.csv") == base);
  CHECK(read(dir.path() / "out" / "update-period_0.5" / "trajectories.csv") == base);
}

TEST_CASE("cli sweep: unknown axis lists the valid axes") {
  const auto r = invoke({"sweep", "-o", "/tmp/unused", "--axis", "tilt", "--values", "1"});
  CHECK(r.code == uavbeam::cli::kExitUsage);
  CHECK(r.err.find("topology") != std::string::npos);
  CHECK(r.err.find("update-period") != std::string::npos);
  CHECK(r.err.find("altitude") != std::string::npos);
}

TEST_CASE("cli pattern: printed peaks and exported cuts") {
  testing::TempDir dir("cli_pattern");
  auto r = invoke({"pattern", "-a", "8x8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("26.1 dBi") != std::string::npos);
  CHECK(r.out.find("HPBW") != std::string::npos);
  r = invoke({"pattern", "-a", "16x16"});
  CHECK(r.out.find("32.1 dBi") != std::string::npos);

  r = invoke({"pattern", "-a", "1x1", "--plane", "azimuth", "-o", dir.file("p")});
  CHECK(r.code == 0);
  CHECK(r.out.find("8.0 dBi") != std::string::npos);
  const std::string csv = read(dir.path() / "p" / "pattern_azimuth.csv");
  const auto lines = uavbeam::text::split_lines(csv);
  REQUIRE(lines.size() > 100);
  CHECK(lines[0] == "angle_deg,gain_db");
  // single element cut is the element pattern itself
  const uavbeam::ElementPattern element;
  for (std::size_t i = 1; i < lines.size(); i += 97) {
    const auto f = uavbeam::text::split_csv_line(lines[i]);
    const double angle = uavbeam::text::parse_double(f[0], "angle", i, "csv");
    const double gain = uavbeam::text::parse_double(f[1], "gain", i, "csv");
    CHECK(gain == doctest::Approx(uavbeam::element_gain_db(element, {90.0, angle})));
  }
  CHECK(fs::exists(dir.path() / "p" / "pattern_azimuth.svg"));
  CHECK_FALSE(fs::exists(dir.path() / "p" / "pattern_elevation.csv"));
}

TEST_CASE("cli pattern: invalid arrays are usage errors") {
  CHECK(invoke({"pattern", "-a", "0x8"}).code == uavbeam::cli::kExitUsage);
  CHECK(invoke({"pattern", "-a", "8by8"}).code == uavbeam::cli::kExitUsage);
  CHECK(invoke({"pattern", "-a", "8x8", "--plane", "diagonal"}).code == uavbeam::cli::kExitUsage);
}

TEST_CASE("cli gen-trajectories and gen-deployment") {
  testing::TempDir dir("cli_gen");
  uavbeam::text::write_file(dir.file("c.json"), kSmall);
  REQUIRE(invoke({"gen-trajectories", "-c", dir.file("c.json"), "-o", dir.file("t.csv")}).code == 0);
  REQUIRE(invoke({"run", "-c", dir.file("c.json"), "-o", dir.file("out")}).code == 0);
  CHECK(read(dir.path() / "t.csv") == read(dir.path() / "out" / "trajectories.csv"));
  const auto seeded = invoke({"gen-trajectories", "-c", dir.file("c.json"), "--seed", "9"});
  CHECK(seeded.code == 0);
  CHECK(seeded.out != read(dir.path() / "t.csv"));

  const auto dep = invoke({"gen-deployment", "-s", "hex:1:500"});
  REQUIRE(dep.code == 0);
  const auto j = nlohmann::json::parse(dep.out);
  CHECK(j["sites"].size() == 7);
  CHECK(j["sectors"].size() == 21);
  CHECK(invoke({"gen-deployment", "-s", "hex:x"}).code != 0);
}

TEST_CASE("cli binary: exit codes through the real executable") {
  testing::TempDir dir("cli_bin");
  const std::string exe = UAVBEAM_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >" + dir.file("o.txt") + " 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("pattern -a 8x8") == 0);
  CHECK(read(dir.path() / "o.txt").find("26.1 dBi") != std::string::npos);
  CHECK(status("pattern -a 0x8") == 2);
  CHECK(status("sweep -o x --axis tilt --values 1") == 2);
}
