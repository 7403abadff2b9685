#pragma once

#include <string>
#include <utility>
#include <vector>

namespace uavbeam {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
  /// Draw as a CDF staircase instead of straight segments.
  bool steps = false;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  /// Optional fixed y range; autoscaled when min >= max.
  double y_min = 0.0;
  double y_max = 0.0;
};

/// Standalone SVG document with axes, ticks and a legend.
std::string render_svg(const LinePlot& plot);

}  // namespace uavbeam
