#include "qnet/region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "qnet/errors.hpp"

namespace qnet {

namespace {

constexpr double kEarthRadiusKm = 6371.0;

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw DataError("region '" + origin + "': " + what);
}

[[noreturn]] void fail_feature(const std::string& origin, size_t index,
                               const std::string& name, const std::string& what) {
  std::ostringstream os;
  os << "region '" << origin << "': feature " << index;
  if (!name.empty()) os << " ('" << name << "')";
  os << ": " << what;
  throw DataError(os.str());
}

}  // namespace

bool Region::contains(const Point& p) const {
  if (kind == RegionKind::disk) {
    return p.x * p.x + p.y * p.y <= radius_km * radius_km;
  }
  for (const RegionPolygon& poly : polygons) {
    if (point_in_polygon(p, poly.vertices)) return true;
  }
  return false;
}

Region make_disk_region(double radius_km) {
  if (!(radius_km > 0.0) || !std::isfinite(radius_km)) {
    throw DataError("disk region: radius must be positive and finite");
  }
  Region r;
  r.kind = RegionKind::disk;
  r.radius_km = radius_km;
  r.total_area_km2 = std::numbers::pi * radius_km * radius_km;
  return r;
}

Region parse_region_geojson(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object() || root.value("type", "") != "FeatureCollection") {
    fail(origin, "expected a FeatureCollection object");
  }
  const std::string crs = root.value("crs_mode", "");
  if (crs != "lonlat" && crs != "planar_km") {
    fail(origin, "crs_mode must be \"lonlat\" or \"planar_km\"");
  }
  if (!root.contains("features") || !root["features"].is_array() ||
      root["features"].empty()) {
    fail(origin, "missing or empty features array");
  }

  Region region;
  region.kind = RegionKind::polygons;

  for (size_t i = 0; i < root["features"].size(); ++i) {
    const json& f = root["features"][i];
    std::string name;
    if (f.contains("properties") && f["properties"].is_object()) {
      name = f["properties"].value("name", "");
    }
    if (!f.is_object() || f.value("type", "") != "Feature") {
      fail_feature(origin, i, name, "expected a Feature object");
    }
    if (!f.contains("properties") || !f["properties"].is_object() ||
        !f["properties"].contains("weight") || !f["properties"]["weight"].is_number()) {
      fail_feature(origin, i, name, "missing numeric 'weight' property");
    }
    const double weight = f["properties"]["weight"].get<double>();
    if (!(weight > 0.0) || !std::isfinite(weight)) {
      fail_feature(origin, i, name, "weight must be positive and finite");
    }
    if (!f.contains("geometry") || !f["geometry"].is_object() ||
        f["geometry"].value("type", "") != "Polygon") {
      fail_feature(origin, i, name, "geometry must be a Polygon");
    }
    const json& coords = f["geometry"]["coordinates"];
    if (!coords.is_array() || coords.empty()) {
      fail_feature(origin, i, name, "missing polygon coordinates");
    }
    if (coords.size() > 1) {
      fail_feature(origin, i, name, "polygon holes are not supported");
    }
    const json& ring = coords[0];
    if (!ring.is_array() || ring.size() < 3) {
      fail_feature(origin, i, name, "ring needs at least 3 positions");
    }
    RegionPolygon poly;
    poly.name = name;
    poly.weight = weight;
    for (const json& pos : ring) {
      if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
        fail_feature(origin, i, name, "ring positions must be [x, y] numbers");
      }
      poly.vertices.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    // GeoJSON rings repeat the first vertex at the end; store them open.
    const Point& first = poly.vertices.front();
    const Point& last = poly.vertices.back();
    if (first.x == last.x && first.y == last.y) poly.vertices.pop_back();
    if (poly.vertices.size() < 3) {
      fail_feature(origin, i, name, "ring needs at least 3 distinct positions");
    }
    region.polygons.push_back(std::move(poly));
  }

  if (crs == "lonlat") {
    double lon0 = 0.0, lat0 = 0.0;
    size_t count = 0;
    for (const RegionPolygon& poly : region.polygons) {
      for (const Point& v : poly.vertices) {
        lon0 += v.x;
        lat0 += v.y;
        ++count;
      }
    }
    lon0 /= static_cast<double>(count);
    lat0 /= static_cast<double>(count);
    const double deg = std::numbers::pi / 180.0;
    const double kx = kEarthRadiusKm * std::cos(lat0 * deg) * deg;
    const double ky = kEarthRadiusKm * deg;
    for (RegionPolygon& poly : region.polygons) {
      for (Point& v : poly.vertices) {
        if (std::abs(v.y) > 90.0 || std::abs(v.x) > 360.0) {
          fail(origin, "lonlat coordinate out of range");
        }
        v = {(v.x - lon0) * kx, (v.y - lat0) * ky};
      }
    }
  }

  double weight_sum = 0.0;
  for (size_t i = 0; i < region.polygons.size(); ++i) {
    RegionPolygon& poly = region.polygons[i];
    if (!polygon_is_simple(poly.vertices)) {
      fail_feature(origin, i, poly.name, "ring is not a simple polygon");
    }
    poly.area_km2 = polygon_area(poly.vertices);
    region.total_area_km2 += poly.area_km2;
    weight_sum += poly.weight;
  }
  for (RegionPolygon& poly : region.polygons) poly.weight /= weight_sum;
  return region;
}

Region load_region_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("region '" + path + "': cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_region_geojson(buf.str(), path);
}

NodeSet sample_nodes(const Region& region, int n, rng::Stream& stream) {
  if (n < 0) throw DataError("sample_nodes: negative node count");
  NodeSet nodes;
  nodes.pos.reserve(n);
  nodes.region_id.reserve(n);

  if (region.kind == RegionKind::disk) {
    const double r_max = region.radius_km;
    for (int i = 0; i < n; ++i) {
      const double r = r_max * std::sqrt(stream.uniform01());
      const double theta = 2.0 * std::numbers::pi * stream.uniform01();
      nodes.pos.push_back({r * std::cos(theta), r * std::sin(theta)});
      nodes.region_id.push_back(0);
    }
  } else {
    std::vector<double> cumulative;
    cumulative.reserve(region.polygons.size());
    double acc = 0.0;
    for (const RegionPolygon& poly : region.polygons) {
      acc += poly.weight;
      cumulative.push_back(acc);
    }
    cumulative.back() = 1.0;
    std::vector<BBox> boxes;
    boxes.reserve(region.polygons.size());
    for (const RegionPolygon& poly : region.polygons) {
      boxes.push_back(bounding_box(poly.vertices));
    }
    for (int i = 0; i < n; ++i) {
      const double u = stream.uniform01();
      const size_t k = std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                       cumulative.begin();
      const RegionPolygon& poly = region.polygons[k];
      const BBox& box = boxes[k];
      Point p;
      do {
        p.x = stream.uniform(box.xmin, box.xmax);
        p.y = stream.uniform(box.ymin, box.ymax);
      } while (!point_in_polygon(p, poly.vertices));
      nodes.pos.push_back(p);
      nodes.region_id.push_back(static_cast<int32_t>(k));
    }
  }

  nodes.density = region.total_area_km2 > 0.0
                      ? static_cast<double>(n) / region.total_area_km2
                      : 0.0;
  return nodes;
}

}  // namespace qnet
