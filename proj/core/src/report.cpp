#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "uavbeam/engine.hpp"
#include "uavbeam/errors.hpp"
#include "uavbeam/plot.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

namespace fs = std::filesystem;

std::string format_handovers_csv(const std::vector<TrajectoryHandover>& handovers) {
  std::ostringstream os;
  os << "trajectory_id,t,from,to,delta_db\n";
  for (const auto& h : handovers) {
    os << h.trajectory_id << ',' << text::format_double(h.event.t) << ',' << h.event.from_sector << ','
       << h.event.to_sector << ',' << text::format_double(h.event.trigger_rx_delta_db) << '\n';
  }
  return os.str();
}

std::vector<TrajectoryHandover> parse_handovers_csv(std::string_view content, const std::string& source_name) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != "trajectory_id,t,from,to,delta_db") {
    throw ParseError(source_name + ":1: expected header trajectory_id,t,from,to,delta_db");
  }
  std::vector<TrajectoryHandover> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto t = text::split_csv_line(lines[i]);
    if (t.size() != 5) throw ParseError(source_name + ":" + std::to_string(i + 1) + ": expected 5 fields");
    TrajectoryHandover h;
    h.trajectory_id = static_cast<int>(text::parse_int(t[0], "trajectory_id", i + 1, source_name));
    h.event.t = text::parse_double(t[1], "t", i + 1, source_name);
    h.event.from_sector = static_cast<int>(text::parse_int(t[2], "from", i + 1, source_name));
    h.event.to_sector = static_cast<int>(text::parse_int(t[3], "to", i + 1, source_name));
    h.event.trigger_rx_delta_db = text::parse_double(t[4], "delta_db", i + 1, source_name);
    out.push_back(h);
  }
  return out;
}

std::string format_report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["fingerprint"] = report.fingerprint;
  j["seed"] = report.seed;
  j["config"] = nlohmann::ordered_json::parse(report.config_json);
  j["summary"] = {{"trajectories", report.summary.trajectories},
                  {"median_outage_cost", report.summary.median_outage_cost},
                  {"mean_outage_cost", report.summary.mean_outage_cost},
                  {"median_handovers_per_min", report.summary.median_handovers_per_min},
                  {"mean_handovers_per_min", report.summary.mean_handovers_per_min},
                  {"total_handovers", report.summary.total_handovers},
                  {"total_ping_pongs", report.summary.total_ping_pongs},
                  {"margin_fallback", report.margin_fallback}};
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string format_comparison_csv(const SweepResult& result) {
  std::ostringstream os;
  os << sweep_axis_name(result.axis)
     << ",median_outage_cost,mean_outage_cost,median_handovers_per_min,mean_handovers_per_min,"
        "total_handovers,total_ping_pongs,fingerprint\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& s = result.reports[i].summary;
    os << result.values[i] << ',' << text::format_double(s.median_outage_cost) << ','
       << text::format_double(s.mean_outage_cost) << ',' << text::format_double(s.median_handovers_per_min)
       << ',' << text::format_double(s.mean_handovers_per_min) << ',' << s.total_handovers << ','
       << s.total_ping_pongs << ',' << result.reports[i].fingerprint << '\n';
  }
  return os.str();
}

namespace {

PlotSeries ecdf_series(const std::string& label, const std::vector<EcdfPoint>& points, bool dashed) {
  PlotSeries s;
  s.label = label;
  s.dashed = dashed;
  s.steps = true;
  for (const auto& p : points) s.points.emplace_back(p.value, p.fraction);
  return s;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

bool is_static(const RunReport& r) { return r.config_json.find("\"mode\": \"static\"") != std::string::npos; }

}  // namespace

void write_report(const RunReport& report, const std::string& dir, bool plots) {
  ensure_dir(dir);
  const fs::path base(dir);
  text::write_file((base / "report.json").string(), format_report_json(report));
  text::write_file((base / "metrics.csv").string(), format_metrics_csv(report.metrics));
  text::write_file((base / "handovers.csv").string(), format_handovers_csv(report.handovers));
  text::write_file((base / "ecdf_outage.csv").string(), format_ecdf_csv(report.ecdf_outage));
  text::write_file((base / "ecdf_handover_rate.csv").string(), format_ecdf_csv(report.ecdf_handover_rate));
  text::write_file((base / "trajectories.csv").string(), format_trajectories_csv(report.trajectories));
  if (plots) {
    LinePlot outage{"Outage cost", "outage cost", "CDF", {ecdf_series("run", report.ecdf_outage, false)}, 0.0, 1.0};
    text::write_file((base / "ecdf_outage.svg").string(), render_svg(outage));
    LinePlot rate{"Handovers per minute", "handovers / min", "CDF",
                  {ecdf_series("run", report.ecdf_handover_rate, false)}, 0.0, 1.0};
    text::write_file((base / "ecdf_handover_rate.svg").string(), render_svg(rate));
  }
}

void write_sweep(const SweepResult& result, const std::string& dir, bool plots) {
  ensure_dir(dir);
  const fs::path base(dir);
  LinePlot outage{std::string("Outage cost by ") + sweep_axis_name(result.axis), "outage cost", "CDF", {}, 0.0, 1.0};
  LinePlot rate{std::string("Handovers per minute by ") + sweep_axis_name(result.axis), "handovers / min", "CDF",
                {}, 0.0, 1.0};
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    std::string name = result.values[i];
    for (char& c : name) {
      if (c == ':' || c == '/' || c == '\\') c = '_';
    }
    write_report(result.reports[i], (base / (std::string(sweep_axis_name(result.axis)) + "_" + name)).string(),
                 plots);
    const bool dashed = is_static(result.reports[i]);
    outage.series.push_back(ecdf_series(result.values[i], result.reports[i].ecdf_outage, dashed));
    rate.series.push_back(ecdf_series(result.values[i], result.reports[i].ecdf_handover_rate, dashed));
  }
  text::write_file((base / "comparison.csv").string(), format_comparison_csv(result));
  if (plots) {
    text::write_file((base / "ecdf_outage.svg").string(), render_svg(outage));
    text::write_file((base / "ecdf_handover_rate.svg").string(), render_svg(rate));
  }
}

}  // namespace uavbeam
