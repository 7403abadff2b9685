#include "uavbeam/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json_fields.hpp"
#include "uavbeam/errors.hpp"
#include "uavbeam/text_io.hpp"

namespace uavbeam {

const char* beam_mode_name(BeamMode mode) { return mode == BeamMode::kTracking ? "tracking" : "static"; }

BeamMode parse_beam_mode(const std::string& text) {
  if (text == "tracking") return BeamMode::kTracking;
  if (text == "static") return BeamMode::kStatic;
  throw ValidationError("unknown beam mode '" + text + "', expected tracking or static");
}

const char* assumption_name(MeasurementAssumption a) {
  switch (a) {
    case MeasurementAssumption::kAligned:
      return "aligned";
    case MeasurementAssumption::kCurrent:
      return "current";
    case MeasurementAssumption::kStatic:
      return "static";
  }
  return "?";
}

MeasurementAssumption parse_assumption(const std::string& text) {
  if (text == "aligned") return MeasurementAssumption::kAligned;
  if (text == "current") return MeasurementAssumption::kCurrent;
  if (text == "static") return MeasurementAssumption::kStatic;
  throw ValidationError("unknown measurement assumption '" + text +
                        "', expected aligned, current or static");
}

Deployment::Deployment(std::vector<Site> sites, std::vector<Sector> sectors)
    : sites_(std::move(sites)), sectors_(std::move(sectors)) {
  std::set<int> site_ids;
  for (const auto& s : sites_) {
    if (!site_ids.insert(s.id).second) {
      throw ValidationError("deployment: duplicate site id " + std::to_string(s.id));
    }
  }
  std::set<int> sector_ids;
  for (const auto& s : sectors_) {
    if (!sector_ids.insert(s.id).second) {
      throw ValidationError("deployment: duplicate sector id " + std::to_string(s.id));
    }
    if (!site_ids.count(s.site_id)) {
      throw ValidationError("deployment: sector " + std::to_string(s.id) + " references unknown site " +
                            std::to_string(s.site_id));
    }
    validate(s.array);
  }
  std::sort(sectors_.begin(), sectors_.end(), [](const Sector& a, const Sector& b) { return a.id < b.id; });
}

const Sector& Deployment::sector(int id) const {
  auto it = std::lower_bound(sectors_.begin(), sectors_.end(), id,
                             [](const Sector& s, int v) { return s.id < v; });
  if (it == sectors_.end() || it->id != id) {
    throw LogicError("deployment: no sector with id " + std::to_string(id));
  }
  return *it;
}

Sector& Deployment::sector(int id) {
  return const_cast<Sector&>(static_cast<const Deployment&>(*this).sector(id));
}

bool Deployment::contains(int id) const {
  auto it = std::lower_bound(sectors_.begin(), sectors_.end(), id,
                             [](const Sector& s, int v) { return s.id < v; });
  return it != sectors_.end() && it->id == id;
}

namespace {

double site_ground(const Site& site, const TerrainGrid& terrain) {
  if (site.ground_override) return *site.ground_override;
  try {
    return elevation_at(terrain, site.x, site.y);
  } catch (const BoundsError& e) {
    throw ValidationError("site " + std::to_string(site.id) + " lies outside the terrain: " + e.what());
  }
}

Position mast_top(const Site& site, const TerrainGrid& terrain, const DeploymentOptions& options) {
  const double ground = site_ground(site, terrain);
  const double height = site.antenna_height_m.value_or(options.antenna_height_m);
  Position p{site.x, site.y, ground + height};
  double terrain_ground = ground;
  try {
    terrain_ground = elevation_at(terrain, site.x, site.y);
  } catch (const BoundsError& e) {
    throw ValidationError("site " + std::to_string(site.id) + " lies outside the terrain: " + e.what());
  }
  if (p.z < terrain_ground) {
    std::ostringstream os;
    os << "site " << site.id << ": antenna at " << p.z << " m is below the terrain (" << terrain_ground
       << " m)";
    throw ValidationError(os.str());
  }
  return p;
}

Sector make_sector(int id, const Site& site, const Position& pos, double azimuth, double downtilt,
                   ArraySpec array, BeamMode mode) {
  Sector s;
  s.id = id;
  s.site_id = site.id;
  s.position = pos;
  s.orientation = {wrap_360(azimuth), downtilt};
  s.array = std::move(array);
  s.beam = BeamState{SteeringAngles{90.0, 0.0}, 0.0, mode};
  return s;
}

Deployment three_sector_layout(const std::vector<std::pair<double, double>>& xy,
                               const TerrainGrid& terrain, const DeploymentOptions& options) {
  std::vector<Site> sites;
  std::vector<Sector> sectors;
  int id = 0;
  for (const auto& [x, y] : xy) {
    Site site;
    site.id = static_cast<int>(sites.size());
    site.x = x;
    site.y = y;
    const Position top = mast_top(site, terrain, options);
    for (double az : {0.0, 120.0, 240.0}) {
      sectors.push_back(make_sector(id++, site, top, az, options.default_downtilt_deg,
                                    options.default_array, options.beam_mode));
    }
    sites.push_back(site);
  }
  return Deployment(std::move(sites), std::move(sectors));
}

}  // namespace

Deployment parse_deployment_json(std::string_view text, const std::string& source_name,
                                 const TerrainGrid& terrain, const DeploymentOptions& options) {
  detail::JsonDocument doc(text, source_name);
  const auto& root = doc.root();
  doc.require_object(root, "");
  doc.check_keys(root, "", {"sites", "sectors"});
  const auto* sites_json = doc.find(root, "sites");
  const auto* sectors_json = doc.find(root, "sectors");
  if (!sites_json || !sites_json->is_array()) doc.fail("/sites", "expected an array of sites");
  if (!sectors_json || !sectors_json->is_array()) doc.fail("/sectors", "expected an array of sectors");

  std::vector<Site> sites;
  std::set<int> site_ids;
  for (std::size_t i = 0; i < sites_json->size(); ++i) {
    const auto& js = (*sites_json)[i];
    const std::string ptr = "/sites/" + std::to_string(i);
    doc.require_object(js, ptr);
    doc.check_keys(js, ptr, {"id", "x", "y", "ground_override", "antenna_height"});
    Site s;
    s.id = static_cast<int>(doc.integer(js, ptr, "id"));
    if (!site_ids.insert(s.id).second) doc.fail(ptr + "/id", "duplicate site id " + std::to_string(s.id));
    s.x = doc.number(js, ptr, "x");
    s.y = doc.number(js, ptr, "y");
    s.ground_override = doc.optional_number(js, ptr, "ground_override");
    s.antenna_height_m = doc.optional_number(js, ptr, "antenna_height");
    sites.push_back(s);
  }

  std::vector<Sector> sectors;
  std::set<int> sector_ids;
  for (std::size_t i = 0; i < sectors_json->size(); ++i) {
    const auto& js = (*sectors_json)[i];
    const std::string ptr = "/sectors/" + std::to_string(i);
    doc.require_object(js, ptr);
    doc.check_keys(js, ptr, {"id", "site", "azimuth_deg", "downtilt_deg", "array"});
    const int id = static_cast<int>(doc.integer(js, ptr, "id"));
    if (!sector_ids.insert(id).second) doc.fail(ptr + "/id", "duplicate sector id " + std::to_string(id));
    const int site_id = static_cast<int>(doc.integer(js, ptr, "site"));
    auto site_it = std::find_if(sites.begin(), sites.end(), [&](const Site& s) { return s.id == site_id; });
    if (site_it == sites.end()) doc.fail(ptr + "/site", "unknown site " + std::to_string(site_id));
    const double az = doc.number(js, ptr, "azimuth_deg");
    const double tilt = doc.number_or(js, ptr, "downtilt_deg", options.default_downtilt_deg);
    if (tilt < -90.0 || tilt > 90.0) doc.fail(ptr + "/downtilt_deg", "must be within [-90, 90]");
    ArraySpec array = options.default_array;
    if (const auto* ja = doc.find(js, "array")) {
      const std::string aptr = ptr + "/array";
      doc.require_object(*ja, aptr);
      doc.check_keys(*ja, aptr, {"m", "n", "dz", "dy"});
      array.m_vertical = static_cast<int>(doc.integer(*ja, aptr, "m"));
      array.n_horizontal = static_cast<int>(doc.integer(*ja, aptr, "n"));
      array.dz_wavelengths = doc.number_or(*ja, aptr, "dz", array.dz_wavelengths);
      array.dy_wavelengths = doc.number_or(*ja, aptr, "dy", array.dy_wavelengths);
      array.amplitudes_z.clear();
      array.amplitudes_y.clear();
      try {
        validate(array);
      } catch (const ValidationError& e) {
        doc.fail(aptr, e.what());
      }
    }
    const Position top = mast_top(*site_it, terrain, options);
    sectors.push_back(make_sector(id, *site_it, top, az, tilt, std::move(array), options.beam_mode));
  }
  return Deployment(std::move(sites), std::move(sectors));
}

Deployment load_deployment(const std::string& path, const TerrainGrid& terrain,
                           const DeploymentOptions& options) {
  std::string content;
  try {
    content = text::read_file(path);
  } catch (const Error&) {
    throw ParseError("cannot open deployment file: " + path);
  }
  return parse_deployment_json(content, path, terrain, options);
}

std::string format_deployment_json(const Deployment& deployment) {
  nlohmann::ordered_json root;
  root["sites"] = nlohmann::ordered_json::array();
  for (const auto& s : deployment.sites()) {
    nlohmann::ordered_json js;
    js["id"] = s.id;
    js["x"] = s.x;
    js["y"] = s.y;
    if (s.ground_override) js["ground_override"] = *s.ground_override;
    if (s.antenna_height_m) js["antenna_height"] = *s.antenna_height_m;
    root["sites"].push_back(js);
  }
  root["sectors"] = nlohmann::ordered_json::array();
  for (const auto& s : deployment.sectors()) {
    nlohmann::ordered_json js;
    js["id"] = s.id;
    js["site"] = s.site_id;
    js["azimuth_deg"] = s.orientation.boresight_azimuth_deg;
    js["downtilt_deg"] = s.orientation.downtilt_deg;
    js["array"] = {{"m", s.array.m_vertical},
                   {"n", s.array.n_horizontal},
                   {"dz", s.array.dz_wavelengths},
                   {"dy", s.array.dy_wavelengths}};
    root["sectors"].push_back(js);
  }
  return root.dump(2) + "\n";
}

Deployment make_hex_deployment(int rings, double isd_m, const TerrainGrid& terrain,
                               const DeploymentOptions& options) {
  if (rings < 0) throw ValidationError("hex deployment: rings must be >= 0");
  if (!(isd_m > 0.0)) throw ValidationError("hex deployment: inter-site distance must be > 0");
  std::vector<std::pair<double, double>> xy;
  const double row = std::sqrt(3.0) / 2.0;
  for (int r = -rings; r <= rings; ++r) {
    for (int q = -rings; q <= rings; ++q) {
      if (std::abs(q + r) > rings) continue;
      xy.emplace_back(options.center_x + isd_m * (q + 0.5 * r), options.center_y + isd_m * row * r);
    }
  }
  return three_sector_layout(xy, terrain, options);
}

Deployment make_grid_deployment(int nx, int ny, double spacing_m, const TerrainGrid& terrain,
                                const DeploymentOptions& options) {
  if (nx < 1 || ny < 1) throw ValidationError("grid deployment: nx and ny must be >= 1");
  if (!(spacing_m > 0.0)) throw ValidationError("grid deployment: spacing must be > 0");
  std::vector<std::pair<double, double>> xy;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      xy.emplace_back(options.center_x + spacing_m * (i - 0.5 * (nx - 1)),
                      options.center_y + spacing_m * (j - 0.5 * (ny - 1)));
    }
  }
  return three_sector_layout(xy, terrain, options);
}

Deployment deployment_from_source(const std::string& source, const TerrainGrid& terrain,
                                  const DeploymentOptions& options) {
  auto fields = [&](std::string_view body) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      auto pos = body.find(':', start);
      out.emplace_back(body.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  };
  if (source.rfind("hex:", 0) == 0) {
    const auto f = fields(std::string_view(source).substr(4));
    if (f.size() != 2) throw ParseError("deployment source '" + source + "': expected hex:<rings>:<isd_m>");
    const auto rings = text::parse_int(f[0], "rings", 1, "deployment source");
    const auto isd = text::parse_double(f[1], "isd_m", 1, "deployment source");
    return make_hex_deployment(static_cast<int>(rings), isd, terrain, options);
  }
  if (source.rfind("grid:", 0) == 0) {
    const auto f = fields(std::string_view(source).substr(5));
    const auto x = f.empty() ? std::string::npos : f[0].find('x');
    if (f.size() != 2 || x == std::string::npos) {
      throw ParseError("deployment source '" + source + "': expected grid:<nx>x<ny>:<spacing_m>");
    }
    const auto nx = text::parse_int(std::string_view(f[0]).substr(0, x), "nx", 1, "deployment source");
    const auto ny = text::parse_int(std::string_view(f[0]).substr(x + 1), "ny", 1, "deployment source");
    const auto spacing = text::parse_double(f[1], "spacing_m", 1, "deployment source");
    return make_grid_deployment(static_cast<int>(nx), static_cast<int>(ny), spacing, terrain, options);
  }
  return load_deployment(source, terrain, options);
}

SteeringAngles aligned_steer(const Sector& sector, const Position& target, const ScanLimits& limits) {
  const auto local = to_array_frame(sector.orientation, angles_to(sector.position, target));
  const double az = std::clamp(wrap_180(local.phi_deg), -limits.max_azimuth_deg, limits.max_azimuth_deg);
  const double el =
      std::clamp(90.0 - local.theta_deg, -limits.max_elevation_deg, limits.max_elevation_deg);
  return {90.0 - el, wrap_360(az)};
}

LinkMeasurement measure_link(const Sector& sector, const Position& uav,
                             MeasurementAssumption assumption, const LinkContext& ctx) {
  const auto global = angles_to(sector.position, uav);
  const auto local = to_array_frame(sector.orientation, global);
  LinkMeasurement m;
  switch (assumption) {
    case MeasurementAssumption::kAligned:
      m.steer = aligned_steer(sector, uav, ctx.limits);
      break;
    case MeasurementAssumption::kCurrent:
      m.steer = sector.beam.steer;
      break;
    case MeasurementAssumption::kStatic:
      m.steer = SteeringAngles{90.0, 0.0};
      break;
  }
  m.gain_db = array_gain_db(sector.array, local, m.steer);
  m.distance_m = distance(sector.position, uav);
  m.los = ctx.terrain ? line_of_sight(*ctx.terrain, sector.position, uav, ctx.los_step_m) : true;
  m.rx_power_dbm = rx_power_dbm(ctx.radio, m.gain_db, m.distance_m, m.los);
  m.snr_db = m.rx_power_dbm - noise_power_dbm(ctx.radio);
  const auto beam_dir =
      to_global_frame(sector.orientation, DirectionAngles{m.steer.theta0_deg, m.steer.phi0_deg});
  m.misalignment_deg = angular_separation_deg(beam_dir, global);
  return m;
}

double measure_cell(const Sector& sector, const Position& uav, MeasurementAssumption assumption,
                    const LinkContext& ctx) {
  return measure_link(sector, uav, assumption, ctx).rx_power_dbm;
}

double rx_power_upper_bound_dbm(const Sector& sector, const Position& uav, const LinkContext& ctx) {
  return rx_power_dbm(ctx.radio, max_array_gain_db(sector.array), distance(sector.position, uav), true);
}

int best_server(const Deployment& deployment, const Position& uav, MeasurementAssumption assumption,
                const LinkContext& ctx) {
  if (deployment.sectors().empty()) {
    throw DomainError("best_server: deployment has no sectors");
  }
  int best = deployment.sectors().front().id;
  double best_rx = -std::numeric_limits<double>::infinity();
  for (const auto& s : deployment.sectors()) {
    if (rx_power_upper_bound_dbm(s, uav, ctx) < best_rx) continue;
    const double rx = measure_cell(s, uav, assumption, ctx);
    if (rx > best_rx) {
      best_rx = rx;
      best = s.id;
    }
  }
  return best;
}

}  // namespace uavbeam
