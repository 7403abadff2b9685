#include "uavbeam/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "uavbeam/errors.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;
constexpr double kRad = std::numbers::pi / 180.0;

double bounds_tolerance(double span) { return 1e-9 * std::max(1.0, std::abs(span)); }

}  // namespace

double distance(const Position& a, const Position& b) {
  return std::hypot(b.x - a.x, b.y - a.y, b.z - a.z);
}

double horizontal_distance(const Position& a, const Position& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

double wrap_360(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w = 0.0;
  return w;
}

double wrap_180(double deg) {
  double w = wrap_360(deg);
  return w > 180.0 ? w - 360.0 : w;
}

UnitVector to_unit_vector(const DirectionAngles& dir) {
  const double th = dir.theta_deg * kRad;
  const double ph = dir.phi_deg * kRad;
  return {std::sin(th) * std::sin(ph), std::sin(th) * std::cos(ph), std::cos(th)};
}

DirectionAngles from_unit_vector(const UnitVector& v) {
  const double norm = std::sqrt(v.e * v.e + v.n * v.n + v.u * v.u);
  if (!(norm > 0.0)) {
    throw GeometryError("from_unit_vector: zero-length vector");
  }
  const double c = std::clamp(v.u / norm, -1.0, 1.0);
  DirectionAngles out;
  out.theta_deg = std::acos(c) * kDeg;
  out.phi_deg = (v.e == 0.0 && v.n == 0.0) ? 0.0 : wrap_360(std::atan2(v.e, v.n) * kDeg);
  return out;
}

double angular_separation_deg(const DirectionAngles& a, const DirectionAngles& b) {
  const auto ua = to_unit_vector(a);
  const auto ub = to_unit_vector(b);
  // atan2 of cross/dot keeps precision near 0 and 180 degrees.
  const double cx = ua.n * ub.u - ua.u * ub.n;
  const double cy = ua.u * ub.e - ua.e * ub.u;
  const double cz = ua.e * ub.n - ua.n * ub.e;
  const double dot = ua.e * ub.e + ua.n * ub.n + ua.u * ub.u;
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot) * kDeg;
}

TerrainGrid::TerrainGrid(double origin_x, double origin_y, double cell_size, std::size_t n_rows,
                         std::size_t n_cols, std::vector<double> heights)
    : origin_x_(origin_x),
      origin_y_(origin_y),
      cell_size_(cell_size),
      n_rows_(n_rows),
      n_cols_(n_cols),
      heights_(std::move(heights)) {
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw ValidationError("TerrainGrid: cell_size must be > 0");
  }
  if (!std::isfinite(origin_x_) || !std::isfinite(origin_y_)) {
    throw ValidationError("TerrainGrid: origin must be finite");
  }
  if (n_rows_ == 0 || n_cols_ == 0) {
    throw ValidationError("TerrainGrid: n_rows and n_cols must be positive");
  }
  if (heights_.size() != n_rows_ * n_cols_) {
    std::ostringstream os;
    os << "TerrainGrid: expected " << n_rows_ * n_cols_ << " heights, got " << heights_.size();
    throw ValidationError(os.str());
  }
  for (double h : heights_) {
    if (!std::isfinite(h)) throw ValidationError("TerrainGrid: heights must be finite");
  }
  auto [lo, hi] = std::minmax_element(heights_.begin(), heights_.end());
  min_height_ = *lo;
  max_height_ = *hi;
}

TerrainGrid TerrainGrid::flat(double ground, double x0, double y0, double width, double height) {
  const double cell = std::max({width, height, 1.0});
  return TerrainGrid(x0, y0, cell, 2, 2, std::vector<double>(4, ground));
}

bool TerrainGrid::contains(double x, double y) const {
  return x >= min_x() - bounds_tolerance(max_x() - min_x()) &&
         x <= max_x() + bounds_tolerance(max_x() - min_x()) &&
         y >= min_y() - bounds_tolerance(max_y() - min_y()) &&
         y <= max_y() + bounds_tolerance(max_y() - min_y());
}

namespace {

// Cell index and fractional offset along one axis; assumes the coordinate is in bounds.
std::pair<std::size_t, double> locate(double coord, double origin, double cell, std::size_t n) {
  if (n == 1) return {0, 0.0};
  double f = (coord - origin) / cell;
  f = std::clamp(f, 0.0, static_cast<double>(n - 1));
  auto i = static_cast<std::size_t>(std::floor(f));
  if (i >= n - 1) i = n - 2;
  return {i, f - static_cast<double>(i)};
}

double interpolate(const TerrainGrid& grid, double x, double y) {
  auto [c, tx] = locate(x, grid.origin_x(), grid.cell_size(), grid.n_cols());
  auto [r, ty] = locate(y, grid.origin_y(), grid.cell_size(), grid.n_rows());
  const std::size_t c1 = grid.n_cols() == 1 ? c : c + 1;
  const std::size_t r1 = grid.n_rows() == 1 ? r : r + 1;
  const double h00 = grid.height(r, c);
  const double h01 = grid.height(r, c1);
  const double h10 = grid.height(r1, c);
  const double h11 = grid.height(r1, c1);
  const double south = h00 + (h01 - h00) * tx;
  const double north = h10 + (h11 - h10) * tx;
  return south + (north - south) * ty;
}

}  // namespace

double elevation_at(const TerrainGrid& grid, double x, double y) {
  if (!grid.contains(x, y)) {
    std::ostringstream os;
    os << "elevation_at: (" << x << ", " << y << ") outside terrain bounds [" << grid.min_x()
       << ", " << grid.max_x() << "] x [" << grid.min_y() << ", " << grid.max_y() << "]";
    throw BoundsError(os.str());
  }
  return interpolate(grid, x, y);
}

DirectionAngles angles_to(const Position& from, const Position& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double dz = to.z - from.z;
  const double r = std::hypot(dx, dy, dz);
  if (!(r > 1e-9)) {
    throw GeometryError("angles_to: coincident points");
  }
  DirectionAngles out;
  out.theta_deg = std::acos(std::clamp(dz / r, -1.0, 1.0)) * kDeg;
  out.phi_deg = (dx == 0.0 && dy == 0.0) ? 0.0 : wrap_360(std::atan2(dx, dy) * kDeg);
  return out;
}

bool line_of_sight(const TerrainGrid& grid, const Position& a, const Position& b, double step) {
  if (!(step > 0.0)) {
    throw DomainError("line_of_sight: step must be > 0");
  }
  for (const Position* p : {&a, &b}) {
    const double ground = elevation_at(grid, p->x, p->y);
    if (p->z < ground - 1e-9) {
      std::ostringstream os;
      os << "line_of_sight: endpoint (" << p->x << ", " << p->y << ", " << p->z
         << ") is below ground " << ground;
      throw InvalidPositionError(os.str());
    }
  }
  if (std::min(a.z, b.z) >= grid.max_height()) {
    return true;
  }
  // Canonical endpoint order makes the sample set independent of argument order.
  const bool swap = std::tie(b.x, b.y, b.z) < std::tie(a.x, a.y, a.z);
  const Position& p0 = swap ? b : a;
  const Position& p1 = swap ? a : b;
  const double len = distance(p0, p1);
  const auto n = static_cast<std::size_t>(std::ceil(len / step));
  for (std::size_t i = 1; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n);
    const double x = p0.x + (p1.x - p0.x) * f;
    const double y = p0.y + (p1.y - p0.y) * f;
    const double z = p0.z + (p1.z - p0.z) * f;
    if (!grid.contains(x, y)) continue;
    if (z < interpolate(grid, x, y)) return false;
  }
  return true;
}

TerrainGrid parse_terrain_csv(std::string_view text, const std::string& source_name) {
  const auto lines = text::split_lines(text);
  if (lines.empty()) {
    throw ParseError(source_name + ": empty terrain file");
  }
  // An optional textual header line naming the columns may precede the values.
  std::size_t idx = 0;
  if (lines[0].find("origin_x") != std::string_view::npos) ++idx;
  if (idx >= lines.size()) {
    throw ParseError(source_name + ": missing grid header values");
  }
  const auto head = text::split_csv_line(lines[idx]);
  if (head.size() != 5) {
    throw ParseError(source_name + ":" + std::to_string(idx + 1) +
                     ": header must have 5 fields origin_x,origin_y,cell_size,n_rows,n_cols");
  }
  const std::size_t hl = idx + 1;
  const double ox = text::parse_double(head[0], "origin_x", hl, source_name);
  const double oy = text::parse_double(head[1], "origin_y", hl, source_name);
  const double cell = text::parse_double(head[2], "cell_size", hl, source_name);
  const long long rows = text::parse_int(head[3], "n_rows", hl, source_name);
  const long long cols = text::parse_int(head[4], "n_cols", hl, source_name);
  if (rows <= 0 || cols <= 0) {
    throw ParseError(source_name + ":" + std::to_string(hl) + ": n_rows and n_cols must be positive");
  }
  ++idx;
  if (lines.size() - idx != static_cast<std::size_t>(rows)) {
    throw ParseError(source_name + ": expected " + std::to_string(rows) + " height rows, found " +
                     std::to_string(lines.size() - idx));
  }
  std::vector<double> heights;
  heights.reserve(static_cast<std::size_t>(rows * cols));
  for (; idx < lines.size(); ++idx) {
    const auto toks = text::split_csv_line(lines[idx]);
    if (toks.size() != static_cast<std::size_t>(cols)) {
      throw ParseError(source_name + ":" + std::to_string(idx + 1) + ": expected " +
                       std::to_string(cols) + " heights, found " + std::to_string(toks.size()));
    }
    for (std::size_t c = 0; c < toks.size(); ++c) {
      heights.push_back(text::parse_double(toks[c], "height[" + std::to_string(c) + "]", idx + 1,
                                           source_name));
    }
  }
  try {
    return TerrainGrid(ox, oy, cell, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                       std::move(heights));
  } catch (const ValidationError& e) {
    throw ParseError(source_name + ": " + e.what());
  }
}

TerrainGrid load_terrain_csv(const std::string& path) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error&) {
    throw ParseError("cannot open terrain file: " + path);
  }
  return parse_terrain_csv(content, path);
}

std::string format_terrain_csv(const TerrainGrid& grid) {
  std::ostringstream os;
  os << "origin_x,origin_y,cell_size,n_rows,n_cols\n";
  os << text::format_double(grid.origin_x()) << ',' << text::format_double(grid.origin_y()) << ','
     << text::format_double(grid.cell_size()) << ',' << grid.n_rows() << ',' << grid.n_cols()
     << '\n';
  for (std::size_t r = 0; r < grid.n_rows(); ++r) {
    for (std::size_t c = 0; c < grid.n_cols(); ++c) {
      if (c) os << ',';
      os << text::format_double(grid.height(r, c));
    }
    os << '\n';
  }
  return os.str();
}

TerrainGrid load_terrain(const std::string& source, double x0, double y0, double width,
                         double height) {
  constexpr std::string_view kFlat = "flat:";
  if (source.rfind(kFlat, 0) == 0) {
    const std::string value = source.substr(kFlat.size());
    const double ground = text::parse_double(value, "terrain", 1, "terrain source");
    return TerrainGrid::flat(ground, x0, y0, width, height);
  }
  return load_terrain_csv(source);
}

}  // namespace uavbeam
