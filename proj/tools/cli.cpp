#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "uavbeam/engine.hpp"
#include "uavbeam/errors.hpp"
#include "uavbeam/plot.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam::cli {

namespace fs = std::filesystem;

namespace {

ScenarioConfig load_with_overrides(const RunOptions& opts) {
  ScenarioConfig cfg = opts.config_path.empty() ? ScenarioConfig{} : load_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  validate(cfg);
  return cfg;
}

void print_summary(std::ostream& out, const std::string& label, const RunReport& r) {
  out << std::fixed << std::setprecision(4) << label << "trajectories=" << r.summary.trajectories
      << " median_outage=" << r.summary.median_outage_cost << " mean_outage=" << r.summary.mean_outage_cost
      << " median_ho_per_min=" << r.summary.median_handovers_per_min
      << " mean_ho_per_min=" << r.summary.mean_handovers_per_min << " handovers=" << r.summary.total_handovers
      << " fingerprint=" << r.fingerprint << '\n';
  out.unsetf(std::ios::floatfield);
}

std::vector<std::string> split_values(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    for (auto tok : text::split_csv_line(r)) {
      if (!tok.empty()) out.emplace_back(tok);
    }
  }
  return out;
}

}  // namespace

std::string config_keys_help() {
  std::ostringstream os;
  os << "Configuration keys (JSON, nested by section; defaults shown):\n";
  for (const auto& k : config_keys()) {
    os << "  " << std::left << std::setw(34) << k.key << std::setw(14) << k.default_value << k.description
       << '\n';
  }
  return os.str();
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ScenarioConfig cfg = load_with_overrides(opts);
    const RunReport report = run(cfg);
    write_report(report, opts.out_dir, opts.plots);
    print_summary(out, "", report);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (opts.verbosity > 0) out << "wrote report to " << opts.out_dir << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  SweepAxis axis;
  try {
    axis = parse_sweep_axis(opts.axis);
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opts.values.empty()) {
    err << "usage error: --values needs at least one value\n";
    return kExitUsage;
  }
  try {
    const ScenarioConfig cfg = load_with_overrides(opts.run);
    const SweepResult result = sweep(cfg, axis, opts.values);
    write_sweep(result, opts.run.out_dir, opts.run.plots);
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
      print_summary(out, std::string(sweep_axis_name(axis)) + "=" + result.values[i] + " ", result.reports[i]);
    }
    if (result.error) {
      err << "error: " << *result.error << " (partial results kept in " << opts.run.out_dir << ")\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_pattern(const PatternOptions& opts, std::ostream& out, std::ostream& err) {
  ArraySpec spec;
  try {
    spec = parse_topology(opts.array, opts.element);
    spec.dz_wavelengths = opts.dz_wavelengths;
    spec.dy_wavelengths = opts.dy_wavelengths;
    validate(spec);
  } catch (const ValidationError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<Plane> planes;
  if (opts.plane == "both") {
    planes = {Plane::kAzimuth, Plane::kElevation};
  } else {
    try {
      planes = {parse_plane(opts.plane)};
    } catch (const ValidationError& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  try {
    const SteeringAngles steer{opts.steer_theta_deg, opts.steer_phi_deg};
    const DirectionAngles at{steer.theta0_deg, steer.phi0_deg};
    const double peak = array_gain_db(spec, at, steer);
    out << "array " << topology_name(spec) << " steered to theta=" << steer.theta0_deg
        << " phi=" << steer.phi0_deg << '\n';
    out << std::fixed << std::setprecision(1) << "peak gain " << peak << " dBi" << std::setprecision(4)
        << " (" << peak << ")\n";
    if (!opts.out_dir.empty()) {
      std::error_code ec;
      fs::create_directories(opts.out_dir, ec);
      if (ec) throw Error("cannot create output directory " + opts.out_dir + ": " + ec.message());
    }
    for (Plane plane : planes) {
      const auto cut = pattern_cut(spec, steer, plane, opts.resolution_deg);
      double hpbw = 0.0;
      try {
        hpbw = half_power_beamwidth_deg(spec, steer, plane);
        out << std::setprecision(2) << plane_name(plane) << " HPBW " << hpbw << " deg\n";
      } catch (const AnalysisError& e) {
        out << plane_name(plane) << " HPBW n/a (" << e.what() << ")\n";
      }
      if (opts.out_dir.empty()) continue;
      std::ostringstream csv;
      csv << "angle_deg,gain_db\n";
      for (const auto& s : cut) {
        csv << text::format_double(s.angle_deg) << ',' << text::format_double(s.gain_db) << '\n';
      }
      const fs::path base(opts.out_dir);
      text::write_file((base / (std::string("pattern_") + plane_name(plane) + ".csv")).string(), csv.str());
      if (opts.plots) {
        PlotSeries series{topology_name(spec), {}, false, false};
        for (const auto& s : cut) series.points.emplace_back(s.angle_deg, s.gain_db);
        LinePlot plot{std::string(plane_name(plane)) + " pattern " + topology_name(spec), "angle [deg]",
                      "gain [dBi]", {series}, peak - 50.0, peak + 5.0};
        text::write_file((base / (std::string("pattern_") + plane_name(plane) + ".svg")).string(),
                         render_svg(plot));
      }
    }
    out.unsetf(std::ios::floatfield);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_gen_trajectories(const GenTrajectoriesOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    RunOptions ro;
    ro.config_path = opts.config_path;
    ro.seed = opts.seed;
    const ScenarioConfig cfg = load_with_overrides(ro);
    const TerrainGrid terrain =
        load_terrain(cfg.terrain_source, cfg.map.x0, cfg.map.y0, cfg.map.width, cfg.map.height);
    const TrajectorySet set = resolve_trajectories(cfg, terrain);
    const std::string csv = format_trajectories_csv(set.trajectories);
    if (opts.out_path.empty() || opts.out_path == "-") {
      out << csv;
    } else {
      text::write_file(opts.out_path, csv);
      out << "wrote " << set.trajectories.size() << " trajectories to " << opts.out_path << '\n';
    }
    if (set.margin_fallback) err << "warning: map smaller than one path length, paths truncated\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_gen_deployment(const GenDeploymentOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    RunOptions ro;
    ro.config_path = opts.config_path;
    ScenarioConfig cfg = load_with_overrides(ro);
    cfg.deployment_source = opts.source;
    const SimulationContext ctx = build_context(cfg);
    const std::string json = format_deployment_json(ctx.deployment);
    if (opts.out_path.empty() || opts.out_path == "-") {
      out << json;
    } else {
      text::write_file(opts.out_path, json);
      out << "wrote " << ctx.deployment.sites().size() << " sites / " << ctx.deployment.sectors().size()
          << " sectors to " << opts.out_path << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"uavbeam: mmWave UAV beamforming, beam tracking and handover simulator"};
  app.footer(config_keys_help());
  app.require_subcommand(1);

  RunOptions run_opts;
  int verbosity = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  auto add_run_flags = [&](CLI::App* sub, RunOptions& o) {
    sub->add_option("-c,--config", o.config_path, "scenario configuration (JSON)");
    sub->add_option("-o,--out", o.out_dir, "output directory")->required();
    sub->add_option("--seed", seed, "override trajectories.seed");
    sub->add_option("--threads", threads, "override simulation.threads (0 = all cores)");
    sub->add_flag("--plots", o.plots, "also write SVG plots");
    sub->add_flag("-v,--verbose", verbosity, "more output");
  };

  auto* run_cmd = app.add_subcommand("run", "simulate one scenario and write its report");
  add_run_flags(run_cmd, run_opts);

  SweepOptions sweep_opts;
  std::vector<std::string> raw_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "run one scenario per value of an axis");
  add_run_flags(sweep_cmd, sweep_opts.run);
  sweep_cmd->add_option("--axis", sweep_opts.axis, "topology | update-period | altitude")->required();
  sweep_cmd->add_option("--values", raw_values, "comma-separated values, e.g. 1x64,8x8 or static:32x2")
      ->required();

  PatternOptions pat;
  auto* pattern_cmd = app.add_subcommand("pattern", "export azimuth/elevation pattern cuts of an array");
  pattern_cmd->add_option("-a,--array", pat.array, "topology MxN (vertical x horizontal)")->capture_default_str();
  pattern_cmd->add_option("--steer-theta", pat.steer_theta_deg, "steering theta from zenith [deg]")
      ->capture_default_str();
  pattern_cmd->add_option("--steer-phi", pat.steer_phi_deg, "steering azimuth from boresight [deg]")
      ->capture_default_str();
  pattern_cmd->add_option("--plane", pat.plane, "azimuth | elevation | both")->capture_default_str();
  pattern_cmd->add_option("--resolution", pat.resolution_deg, "cut resolution [deg]")->capture_default_str();
  pattern_cmd->add_option("--dz", pat.dz_wavelengths, "vertical spacing [wavelengths]")->capture_default_str();
  pattern_cmd->add_option("--dy", pat.dy_wavelengths, "horizontal spacing [wavelengths]")->capture_default_str();
  pattern_cmd->add_option("--element-gain", pat.element.max_gain_dbi, "element max gain [dBi]")
      ->capture_default_str();
  pattern_cmd->add_option("--element-hpbw", pat.element.hpbw_deg, "element 3 dB beamwidth [deg]")
      ->capture_default_str();
  pattern_cmd->add_option("-o,--out", pat.out_dir, "directory for pattern_<plane>.csv/.svg");
  bool no_plots = false;
  pattern_cmd->add_flag("--no-plots", no_plots, "skip SVG output");

  GenTrajectoriesOptions gt;
  auto* gt_cmd = app.add_subcommand("gen-trajectories", "write the trajectory set of a config as CSV");
  gt_cmd->add_option("-c,--config", gt.config_path, "scenario configuration (JSON)");
  gt_cmd->add_option("-o,--out", gt.out_path, "output CSV (default stdout)");
  gt_cmd->add_option("--seed", seed, "override trajectories.seed");

  GenDeploymentOptions gd;
  auto* gd_cmd = app.add_subcommand("gen-deployment", "write a synthetic deployment as JSON");
  gd_cmd->add_option("-c,--config", gd.config_path, "scenario configuration for terrain, map and arrays");
  gd_cmd->add_option("-s,--source", gd.source, "hex:<rings>:<isd_m> or grid:<nx>x<ny>:<spacing_m>")
      ->capture_default_str();
  gd_cmd->add_option("-o,--out", gd.out_path, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto apply_common = [&](CLI::App* sub, RunOptions& o) {
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--threads")) o.threads = threads;
    o.verbosity = verbosity;
  };

  if (*run_cmd) {
    apply_common(run_cmd, run_opts);
    return cmd_run(run_opts, out, err);
  }
  if (*sweep_cmd) {
    apply_common(sweep_cmd, sweep_opts.run);
    sweep_opts.values = split_values(raw_values);
    return cmd_sweep(sweep_opts, out, err);
  }
  if (*pattern_cmd) {
    pat.plots = !no_plots;
    return cmd_pattern(pat, out, err);
  }
  if (*gt_cmd) {
    if (gt_cmd->count("--seed")) gt.seed = seed;
    return cmd_gen_trajectories(gt, out, err);
  }
  if (*gd_cmd) {
    return cmd_gen_deployment(gd, out, err);
  }
  return kExitUsage;
}

}  // namespace uavbeam::cli
