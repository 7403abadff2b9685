#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavbeam {

/// Point in the local east-north-up frame. x/y in meters, z above sea level.
struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

double distance(const Position& a, const Position& b);
double horizontal_distance(const Position& a, const Position& b);

/// Direction of a ray. theta is measured from the zenith in [0, 180];
/// phi is the azimuth in [0, 360), north = 0, clockwise positive.
struct DirectionAngles {
  double theta_deg = 90.0;
  double phi_deg = 0.0;
};

/// Unit vector (east, north, up) for a direction.
struct UnitVector {
  double e = 0.0;
  double n = 0.0;
  double u = 0.0;
};

UnitVector to_unit_vector(const DirectionAngles& dir);
DirectionAngles from_unit_vector(const UnitVector& v);

/// Angle between two directions, degrees in [0, 180].
double angular_separation_deg(const DirectionAngles& a, const DirectionAngles& b);

/// Wraps an angle into [0, 360).
double wrap_360(double deg);
/// Wraps an angle into (-180, 180].
double wrap_180(double deg);

/// Ground elevation raster. Samples sit on a regular lattice:
/// heights[r * n_cols + c] is the ground at (origin_x + c * cell_size,
/// origin_y + r * cell_size). Row 0 is the southernmost row.
class TerrainGrid {
 public:
  TerrainGrid(double origin_x, double origin_y, double cell_size, std::size_t n_rows,
              std::size_t n_cols, std::vector<double> heights);

  /// Constant-height grid covering [x0, x0 + width] x [y0, y0 + height].
  static TerrainGrid flat(double ground, double x0, double y0, double width, double height);

  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }
  double cell_size() const { return cell_size_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::span<const double> heights() const { return heights_; }
  double height(std::size_t row, std::size_t col) const { return heights_[row * n_cols_ + col]; }

  double min_x() const { return origin_x_; }
  double min_y() const { return origin_y_; }
  double max_x() const { return origin_x_ + cell_size_ * static_cast<double>(n_cols_ - 1); }
  double max_y() const { return origin_y_ + cell_size_ * static_cast<double>(n_rows_ - 1); }
  double max_height() const { return max_height_; }
  double min_height() const { return min_height_; }

  bool contains(double x, double y) const;

 private:
  double origin_x_;
  double origin_y_;
  double cell_size_;
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<double> heights_;
  double max_height_ = 0.0;
  double min_height_ = 0.0;
};

/// Bilinear interpolation of the ground height. Throws BoundsError outside the grid.
double elevation_at(const TerrainGrid& grid, double x, double y);

/// Direction from `from` towards `to`. Throws GeometryError for coincident points.
DirectionAngles angles_to(const Position& from, const Position& to);

inline constexpr double kDefaultLosStepM = 5.0;

/// True iff the segment a-b stays above the terrain at every interior sample.
/// Samples are placed at i/n of the segment, n = ceil(|a-b| / step), so the
/// test is symmetric in its endpoints. Samples outside the raster are ignored.
/// Throws InvalidPositionError if an endpoint is below the local ground.
bool line_of_sight(const TerrainGrid& grid, const Position& a, const Position& b,
                   double step = kDefaultLosStepM);

/// Parses the CSV grid format: header `origin_x,origin_y,cell_size,n_rows,n_cols`
/// followed by n_rows lines of n_cols heights.
TerrainGrid parse_terrain_csv(std::string_view text, const std::string& source_name = "<memory>");
TerrainGrid load_terrain_csv(const std::string& path);
std::string format_terrain_csv(const TerrainGrid& grid);

/// Resolves a terrain source: `flat:<height>` builds a flat grid over the given
/// extent, anything else is read as a CSV file path.
TerrainGrid load_terrain(const std::string& source, double x0, double y0, double width,
                         double height);

}  // namespace uavbeam
