#pragma once

#include <optional>
#include <vector>

#include "uavbeam/network.hpp"

namespace uavbeam {

/// A3 event: a neighbour must beat the serving cell by threshold + hysteresis
/// for at least time_to_trigger seconds.
struct A3Config {
  double threshold_db = 3.0;
  double time_to_trigger_s = 0.0;
  double hysteresis_db = 0.0;
};

void validate(const A3Config& cfg);

/// Beam assumptions used when comparing cells.
struct MeasurementPolicy {
  MeasurementAssumption serving = MeasurementAssumption::kCurrent;
  MeasurementAssumption neighbor = MeasurementAssumption::kAligned;
};

struct HandoverEvent {
  double t = 0.0;
  int from_sector = 0;
  int to_sector = 0;
  double trigger_rx_delta_db = 0.0;
};

struct ConnectionState {
  int serving_sector_id = 0;
  std::optional<double> a3_pending_since{};
  std::vector<HandoverEvent> handover_log{};
};

struct A3Candidate {
  int sector_id = 0;
  double rx_delta_db = 0.0;
};

/// Updates the A3 timer in `state` and returns the strongest neighbour once the
/// entry condition has held for the time-to-trigger. The timer resets as soon
/// as no neighbour satisfies the condition.
std::optional<A3Candidate> evaluate_a3(ConnectionState& state, const Deployment& deployment,
                                       const Position& uav, const A3Config& cfg, double t,
                                       const LinkContext& ctx, const MeasurementPolicy& policy = {});

/// Moves the connection to `to_sector`. A tracking target beam is steered
/// exactly at the UAV at no cost; static beams are left alone.
/// Throws LogicError for a handover to the serving sector.
ConnectionState execute_handover(ConnectionState state, int to_sector, Deployment& deployment,
                                 const Position& uav, double t, const LinkContext& ctx,
                                 double trigger_rx_delta_db = 0.0);

inline constexpr double kTrackingTimeTolerance = 1e-9;

/// Periodic beam refresh: re-steers at the UAV when update_period_s has
/// elapsed since the last update. Static beams never change.
BeamState tracking_update(const Sector& sector, const Position& uav, double t, double update_period_s,
                          const ScanLimits& limits);

}  // namespace uavbeam
