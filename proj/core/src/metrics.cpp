#include "uavbeam/metrics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "uavbeam/errors.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

double outage_cost(std::span<const LinkSample> samples, double threshold_db) {
  if (samples.empty()) throw DomainError("outage_cost: empty sample series");
  const auto below = std::count_if(samples.begin(), samples.end(),
                                   [&](const LinkSample& s) { return s.snr_db < threshold_db; });
  return static_cast<double>(below) / static_cast<double>(samples.size());
}

double handover_rate(std::size_t event_count, double duration_s) {
  if (!(duration_s > 0.0)) throw DomainError("handover_rate: duration must be > 0");
  return 60.0 * static_cast<double>(event_count) / duration_s;
}

double handover_rate(std::span<const HandoverEvent> log, double duration_s) {
  return handover_rate(log.size(), duration_s);
}

int count_ping_pongs(std::span<const HandoverEvent> log, double window_s) {
  int n = 0;
  for (std::size_t i = 1; i < log.size(); ++i) {
    const auto& prev = log[i - 1];
    const auto& cur = log[i];
    if (cur.to_sector == prev.from_sector && cur.t - prev.t <= window_s + 1e-9) ++n;
  }
  return n;
}

std::vector<EcdfPoint> ecdf(std::span<const double> values) {
  if (values.empty()) throw DomainError("ecdf: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<EcdfPoint> out;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    out.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  out.back().fraction = 1.0;
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

TrajectoryMetrics compute_trajectory_metrics(int trajectory_id, std::span<const LinkSample> samples,
                                             std::span<const HandoverEvent> log, double duration_s,
                                             double outage_threshold_db, double ping_pong_window_s) {
  TrajectoryMetrics m;
  m.trajectory_id = trajectory_id;
  m.outage_cost = outage_cost(samples, outage_threshold_db);
  m.handovers = static_cast<int>(log.size());
  m.handovers_per_min = handover_rate(log, duration_s);
  m.ping_pongs = count_ping_pongs(log, ping_pong_window_s);
  m.realized_duration_s = duration_s;
  m.min_snr_db = std::numeric_limits<double>::infinity();
  m.max_snr_db = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& s : samples) {
    m.min_snr_db = std::min(m.min_snr_db, s.snr_db);
    m.max_snr_db = std::max(m.max_snr_db, s.snr_db);
    sum += s.snr_db;
  }
  m.mean_snr_db = sum / static_cast<double>(samples.size());
  return m;
}

namespace {
constexpr std::string_view kMetricsHeader =
    "trajectory_id,outage_cost,handovers_per_min,handovers,ping_pongs,realized_duration_s,"
    "min_snr_db,mean_snr_db,max_snr_db";
}

std::string format_metrics_csv(std::span<const TrajectoryMetrics> rows) {
  using text::format_double;
  std::ostringstream os;
  os << kMetricsHeader << '\n';
  for (const auto& m : rows) {
    os << m.trajectory_id << ',' << format_double(m.outage_cost) << ','
       << format_double(m.handovers_per_min) << ',' << m.handovers << ',' << m.ping_pongs << ','
       << format_double(m.realized_duration_s) << ',' << format_double(m.min_snr_db) << ','
       << format_double(m.mean_snr_db) << ',' << format_double(m.max_snr_db) << '\n';
  }
  return os.str();
}

std::vector<TrajectoryMetrics> parse_metrics_csv(std::string_view content, const std::string& source_name) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != kMetricsHeader) {
    throw ParseError(source_name + ":1: unexpected metrics header");
  }
  std::vector<TrajectoryMetrics> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto t = text::split_csv_line(lines[i]);
    if (t.size() != 9) throw ParseError(source_name + ":" + std::to_string(i + 1) + ": expected 9 fields");
    TrajectoryMetrics m;
    m.trajectory_id = static_cast<int>(text::parse_int(t[0], "trajectory_id", i + 1, source_name));
    m.outage_cost = text::parse_double(t[1], "outage_cost", i + 1, source_name);
    m.handovers_per_min = text::parse_double(t[2], "handovers_per_min", i + 1, source_name);
    m.handovers = static_cast<int>(text::parse_int(t[3], "handovers", i + 1, source_name));
    m.ping_pongs = static_cast<int>(text::parse_int(t[4], "ping_pongs", i + 1, source_name));
    m.realized_duration_s = text::parse_double(t[5], "realized_duration_s", i + 1, source_name);
    m.min_snr_db = text::parse_double(t[6], "min_snr_db", i + 1, source_name);
    m.mean_snr_db = text::parse_double(t[7], "mean_snr_db", i + 1, source_name);
    m.max_snr_db = text::parse_double(t[8], "max_snr_db", i + 1, source_name);
    out.push_back(m);
  }
  return out;
}

std::string format_ecdf_csv(std::span<const EcdfPoint> points) {
  std::ostringstream os;
  os << "value,cumulative_fraction\n";
  for (const auto& p : points) {
    os << text::format_double(p.value) << ',' << text::format_double(p.fraction) << '\n';
  }
  return os.str();
}

std::vector<EcdfPoint> parse_ecdf_csv(std::string_view content, const std::string& source_name) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != "value,cumulative_fraction") {
    throw ParseError(source_name + ":1: unexpected ECDF header");
  }
  std::vector<EcdfPoint> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto t = text::split_csv_line(lines[i]);
    if (t.size() != 2) throw ParseError(source_name + ":" + std::to_string(i + 1) + ": expected 2 fields");
    out.push_back({text::parse_double(t[0], "value", i + 1, source_name),
                   text::parse_double(t[1], "cumulative_fraction", i + 1, source_name)});
  }
  return out;
}

}  // namespace uavbeam
