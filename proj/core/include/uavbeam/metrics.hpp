#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavbeam/handover.hpp"

namespace uavbeam {

/// One simulation step on the serving link.
struct LinkSample {
  double t = 0.0;
  int serving_sector_id = 0;
  double snr_db = 0.0;
  double rx_power_dbm = 0.0;
  bool los = true;
  double misalignment_deg = 0.0;
};

inline constexpr double kDefaultOutageThresholdDb = -6.0;
inline constexpr double kDefaultPingPongWindowS = 1.0;

/// Fraction of samples with SNR strictly below the threshold.
/// Throws DomainError for an empty series.
double outage_cost(std::span<const LinkSample> samples, double threshold_db);

/// Handovers per minute over the realized duration.
double handover_rate(std::size_t event_count, double duration_s);
double handover_rate(std::span<const HandoverEvent> log, double duration_s);

/// Handovers that return to the previous sector within `window_s`.
int count_ping_pongs(std::span<const HandoverEvent> log, double window_s);

struct EcdfPoint {
  double value = 0.0;
  double fraction = 0.0;
};

/// Empirical CDF as a step function over the distinct values; last fraction is exactly 1.
std::vector<EcdfPoint> ecdf(std::span<const double> values);

/// Median by the usual midpoint convention for even counts.
double median(std::vector<double> values);

struct TrajectoryMetrics {
  int trajectory_id = 0;
  double outage_cost = 0.0;
  double handovers_per_min = 0.0;
  int handovers = 0;
  int ping_pongs = 0;
  double realized_duration_s = 0.0;
  double min_snr_db = 0.0;
  double mean_snr_db = 0.0;
  double max_snr_db = 0.0;
};

TrajectoryMetrics compute_trajectory_metrics(int trajectory_id, std::span<const LinkSample> samples,
                                             std::span<const HandoverEvent> log, double duration_s,
                                             double outage_threshold_db,
                                             double ping_pong_window_s = kDefaultPingPongWindowS);

std::string format_metrics_csv(std::span<const TrajectoryMetrics> rows);
std::vector<TrajectoryMetrics> parse_metrics_csv(std::string_view text,
                                                 const std::string& source_name = "<memory>");

std::string format_ecdf_csv(std::span<const EcdfPoint> points);
std::vector<EcdfPoint> parse_ecdf_csv(std::string_view text, const std::string& source_name = "<memory>");

}  // namespace uavbeam
