#include "uavbeam/handover.hpp"

#include <limits>

#include "uavbeam/errors.hpp"

namespace uavbeam {

void validate(const A3Config& cfg) {
  if (!(cfg.threshold_db >= 0.0)) throw ValidationError("a3.threshold_db must be >= 0");
  if (!(cfg.time_to_trigger_s >= 0.0)) throw ValidationError("a3.time_to_trigger_s must be >= 0");
  if (!(cfg.hysteresis_db >= 0.0)) throw ValidationError("a3.hysteresis_db must be >= 0");
}

std::optional<A3Candidate> evaluate_a3(ConnectionState& state, const Deployment& deployment,
                                       const Position& uav, const A3Config& cfg, double t,
                                       const LinkContext& ctx, const MeasurementPolicy& policy) {
  const Sector& serving = deployment.sector(state.serving_sector_id);
  const double serving_rx = measure_cell(serving, uav, policy.serving, ctx);
  const double entry = serving_rx + cfg.threshold_db + cfg.hysteresis_db;

  int best_id = 0;
  double best_rx = -std::numeric_limits<double>::infinity();
  for (const auto& s : deployment.sectors()) {
    if (s.id == serving.id) continue;
    // The bound is exact-safe: a sector that cannot reach the entry level or
    // the current best cannot change the outcome.
    const double bound = rx_power_upper_bound_dbm(s, uav, ctx);
    if (bound < entry || bound < best_rx) continue;
    const double rx = measure_cell(s, uav, policy.neighbor, ctx);
    if (rx > best_rx) {
      best_rx = rx;
      best_id = s.id;
    }
  }

  if (!(best_rx >= entry)) {
    state.a3_pending_since.reset();
    return std::nullopt;
  }
  if (!state.a3_pending_since) state.a3_pending_since = t;
  if (t - *state.a3_pending_since + kTrackingTimeTolerance < cfg.time_to_trigger_s) {
    return std::nullopt;
  }
  return A3Candidate{best_id, best_rx - serving_rx};
}

ConnectionState execute_handover(ConnectionState state, int to_sector, Deployment& deployment,
                                 const Position& uav, double t, const LinkContext& ctx,
                                 double trigger_rx_delta_db) {
  if (to_sector == state.serving_sector_id) {
    throw LogicError("execute_handover: target " + std::to_string(to_sector) + " is already serving");
  }
  Sector& target = deployment.sector(to_sector);
  if (target.beam.mode == BeamMode::kTracking) {
    target.beam.steer = aligned_steer(target, uav, ctx.limits);
    target.beam.last_update_t = t;
  }
  state.handover_log.push_back({t, state.serving_sector_id, to_sector, trigger_rx_delta_db});
  state.serving_sector_id = to_sector;
  state.a3_pending_since.reset();
  return state;
}

BeamState tracking_update(const Sector& sector, const Position& uav, double t, double update_period_s,
                          const ScanLimits& limits) {
  BeamState beam = sector.beam;
  if (beam.mode == BeamMode::kStatic) return beam;
  if (t - beam.last_update_t + kTrackingTimeTolerance >= update_period_s) {
    beam.steer = aligned_steer(sector, uav, limits);
    beam.last_update_t = t;
  }
  return beam;
}

}  // namespace uavbeam
