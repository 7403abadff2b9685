#include "uavbeam/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "uavbeam/errors.hpp"

namespace uavbeam {

namespace {

ArraySpec configured_array(const ScenarioConfig& cfg) {
  ArraySpec spec = cfg.topology.empty() ? ArraySpec{} : parse_topology(cfg.topology, cfg.element);
  spec.element = cfg.element;
  spec.dz_wavelengths = cfg.dz_wavelengths;
  spec.dy_wavelengths = cfg.dy_wavelengths;
  return spec;
}

}  // namespace

SimulationContext build_context(const ScenarioConfig& cfg) {
  validate(cfg);
  TerrainGrid terrain = load_terrain(cfg.terrain_source, cfg.map.x0, cfg.map.y0, cfg.map.width,
                                     cfg.map.height);
  DeploymentOptions options;
  options.antenna_height_m = cfg.antenna_height_m;
  options.default_downtilt_deg = cfg.downtilt_deg;
  options.default_array = configured_array(cfg);
  options.beam_mode = cfg.beam_mode;
  options.center_x = cfg.map.x0 + 0.5 * cfg.map.width;
  options.center_y = cfg.map.y0 + 0.5 * cfg.map.height;
  Deployment deployment = deployment_from_source(cfg.deployment_source, terrain, options);
  if (deployment.sectors().empty()) {
    throw ValidationError("config key 'deployment.source': deployment has no sectors");
  }
  if (!cfg.topology.empty()) {
    for (auto& s : deployment.sectors()) {
      s.array = options.default_array;
    }
  }
  for (auto& s : deployment.sectors()) {
    s.array.element = cfg.element;
    s.beam.mode = cfg.beam_mode;
  }

  MeasurementPolicy policy;
  policy.serving = MeasurementAssumption::kCurrent;
  policy.neighbor = cfg.neighbor_measurement.value_or(
      cfg.beam_mode == BeamMode::kTracking ? MeasurementAssumption::kAligned : MeasurementAssumption::kStatic);

  LinkContext link;
  link.radio = cfg.radio;
  link.los_step_m = cfg.los_step_m;
  link.limits = cfg.scan_limits;
  SimulationContext ctx{std::move(terrain), std::move(deployment), link, policy, cfg};
  return ctx;
}

TrajectorySet resolve_trajectories(const ScenarioConfig& cfg, const TerrainGrid& terrain) {
  if (!cfg.trajectory_file.empty()) {
    TrajectorySet set;
    set.trajectories = load_trajectories_csv(cfg.trajectory_file, terrain, cfg.altitude_mode);
    for (auto& t : set.trajectories) {
      t = truncate_to_area(t, cfg.map);
    }
    return set;
  }
  TrajectoryParams params;
  params.seed = cfg.seed;
  params.count = cfg.trajectory_count;
  params.area = cfg.map;
  params.altitude_agl_m = cfg.altitude_agl_m;
  params.speed_mps = cfg.speed_mps;
  params.duration_s = cfg.duration_s;
  params.altitude_mode = cfg.altitude_mode;
  return generate_trajectories(params, terrain);
}

TrajectoryResult simulate_trajectory(const SimulationContext& ctx, const Trajectory& traj,
                                     bool record_samples) {
  const ScenarioConfig& cfg = ctx.config;
  Deployment deployment = ctx.deployment;
  LinkContext link = ctx.link;
  link.terrain = &ctx.terrain;
  const TerrainGrid* terrain = &ctx.terrain;
  const double dt = cfg.time_step_s;
  const auto steps = static_cast<long long>(std::floor(traj.duration_s / dt + 1e-9));

  const Position start = step(traj, 0.0, terrain).position;
  const auto initial = cfg.beam_mode == BeamMode::kTracking ? MeasurementAssumption::kAligned
                                                              : MeasurementAssumption::kStatic;
  ConnectionState conn;
  conn.serving_sector_id = best_server(deployment, start, initial, link);
  if (cfg.beam_mode == BeamMode::kTracking) {
    Sector& serving = deployment.sector(conn.serving_sector_id);
    serving.beam.steer = aligned_steer(serving, start, link.limits);
    serving.beam.last_update_t = 0.0;
  }

  TrajectoryResult result;
  std::vector<LinkSample> samples;
  samples.reserve(static_cast<std::size_t>(steps + 1));
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Position uav = step(traj, std::min(t, traj.duration_s), terrain).position;

    Sector& serving = deployment.sector(conn.serving_sector_id);
    serving.beam = tracking_update(serving, uav, t, cfg.update_period_s, link.limits);

    const auto m = measure_link(serving, uav, MeasurementAssumption::kCurrent, link);
    samples.push_back({t, serving.id, m.snr_db, m.rx_power_dbm, m.los, m.misalignment_deg});
    if (record_samples) result.beams.push_back(serving.beam);

    if (auto cand = evaluate_a3(conn, deployment, uav, cfg.a3, t, link, ctx.policy)) {
      conn = execute_handover(std::move(conn), cand->sector_id, deployment, uav, t, link, cand->rx_delta_db);
    }
  }

  result.metrics = compute_trajectory_metrics(traj.id, samples, conn.handover_log, traj.duration_s,
                                              cfg.outage_threshold_db, cfg.ping_pong_window_s);
  result.handovers = std::move(conn.handover_log);
  if (record_samples) result.samples = std::move(samples);
  return result;
}

namespace {

RunSummary summarize(const std::vector<TrajectoryMetrics>& metrics) {
  RunSummary s;
  s.trajectories = static_cast<int>(metrics.size());
  std::vector<double> outage;
  std::vector<double> rate;
  for (const auto& m : metrics) {
    outage.push_back(m.outage_cost);
    rate.push_back(m.handovers_per_min);
    s.total_handovers += m.handovers;
    s.total_ping_pongs += m.ping_pongs;
  }
  s.median_outage_cost = median(outage);
  s.median_handovers_per_min = median(rate);
  s.mean_outage_cost = std::accumulate(outage.begin(), outage.end(), 0.0) / static_cast<double>(outage.size());
  s.mean_handovers_per_min = std::accumulate(rate.begin(), rate.end(), 0.0) / static_cast<double>(rate.size());
  return s;
}

}  // namespace

RunReport run(const ScenarioConfig& cfg) {
  const SimulationContext ctx = build_context(cfg);
  const TrajectorySet set = resolve_trajectories(cfg, ctx.terrain);

  RunReport report;
  report.fingerprint = config_fingerprint(cfg);
  report.config_json = config_to_json(cfg);
  report.seed = cfg.seed;
  report.margin_fallback = set.margin_fallback;
  report.trajectories = set.trajectories;
  if (set.margin_fallback) {
    report.warnings.push_back(
        "map area smaller than one path length: starts drawn over the full area with boundary truncation");
  }

  const std::size_t n = set.trajectories.size();
  std::vector<TrajectoryResult> results(n);
  std::size_t workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : static_cast<std::size_t>(cfg.threads);
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      results[i] = simulate_trajectory(ctx, set.trajectories[i], cfg.record_samples);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            results[i] = simulate_trajectory(ctx, set.trajectories[i], cfg.record_samples);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> outage;
  std::vector<double> rate;
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = results[i];
    report.metrics.push_back(r.metrics);
    outage.push_back(r.metrics.outage_cost);
    rate.push_back(r.metrics.handovers_per_min);
    for (const auto& e : r.handovers) {
      report.handovers.push_back({set.trajectories[i].id, e});
    }
    if (cfg.record_samples) report.samples.push_back(std::move(r.samples));
  }
  report.ecdf_outage = ecdf(outage);
  report.ecdf_handover_rate = ecdf(rate);
  report.summary = summarize(report.metrics);
  return report;
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "topology") return SweepAxis::kTopology;
  if (text == "update-period" || text == "update_period") return SweepAxis::kUpdatePeriod;
  if (text == "altitude") return SweepAxis::kAltitude;
  throw ValidationError("unknown sweep axis '" + text + "', valid axes: topology, update-period, altitude");
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTopology:
      return "topology";
    case SweepAxis::kUpdatePeriod:
      return "update-period";
    case SweepAxis::kAltitude:
      return "altitude";
  }
  return "?";
}

ScenarioConfig apply_sweep_value(ScenarioConfig cfg, SweepAxis axis, const std::string& value) {
  auto number = [&](const char* key) {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::logic_error&) {
      throw ValidationError(std::string("sweep value '") + value + "' for " + key + " is not a number");
    }
  };
  switch (axis) {
    case SweepAxis::kTopology: {
      std::string topo = value;
      if (topo.rfind("static:", 0) == 0) {
        topo = topo.substr(7);
        cfg.beam_mode = BeamMode::kStatic;
      }
      parse_topology(topo);
      cfg.topology = topo;
      break;
    }
    case SweepAxis::kUpdatePeriod:
      cfg.update_period_s = number("beam.update_period_s");
      break;
    case SweepAxis::kAltitude:
      cfg.altitude_agl_m = number("trajectories.altitude_agl_m");
      break;
  }
  validate(cfg);
  return cfg;
}

SweepResult sweep(const ScenarioConfig& base, SweepAxis axis, const std::vector<std::string>& values) {
  if (values.empty()) throw DomainError("sweep: no values given");
  SweepResult result;
  result.axis = axis;
  // Validate every value up front so a typo does not waste the earlier runs.
  std::vector<ScenarioConfig> configs;
  for (const auto& v : values) configs.push_back(apply_sweep_value(base, axis, v));
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      result.reports.push_back(run(configs[i]));
      result.values.push_back(values[i]);
    } catch (const std::exception& e) {
      result.error = "sweep value '" + values[i] + "': " + e.what();
      break;
    }
  }
  return result;
}

}  // namespace uavbeam
