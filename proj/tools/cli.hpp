#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavbeam/antenna.hpp"

namespace uavbeam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool plots = false;
  int verbosity = 0;
};

struct SweepOptions {
  RunOptions run;
  std::string axis;
  std::vector<std::string> values;
};

struct PatternOptions {
  std::string array = "8x8";
  double steer_theta_deg = 90.0;
  double steer_phi_deg = 0.0;
  std::string plane = "both";
  double resolution_deg = 0.1;
  double dz_wavelengths = 0.5;
  double dy_wavelengths = 0.5;
  ElementPattern element{};
  std::string out_dir;
  bool plots = true;
};

struct GenTrajectoriesOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

struct GenDeploymentOptions {
  std::string config_path;
  std::string source = "hex:2:500";
  std::string out_path;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_pattern(const PatternOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen_trajectories(const GenTrajectoriesOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen_deployment(const GenDeploymentOptions& opts, std::ostream& out, std::ostream& err);

/// Text listing every configuration key and its default.
std::string config_keys_help();

/// Full command-line entry point.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace uavbeam::cli
