#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/geometry.hpp"
#include "qnet/rng.hpp"

namespace qnet {

// Sampling domains for node placement. Polygon regions come from a
// GeoJSON-style file; vertices are stored in planar km (lon/lat inputs are
// projected at load time).
enum class RegionKind { disk, polygons };

struct RegionPolygon {
  std::vector<Point> vertices;  // planar km, open ring
  double weight = 0.0;          // normalized at load
  double area_km2 = 0.0;
  std::string name;
};

struct Region {
  RegionKind kind = RegionKind::disk;
  double radius_km = 0.0;                // disk only
  std::vector<RegionPolygon> polygons;   // polygons only
  double total_area_km2 = 0.0;

  bool contains(const Point& p) const;
};

struct NodeSet {
  std::vector<Point> pos;          // km
  std::vector<int32_t> region_id;  // owning polygon index, 0 for disk
  double density = 0.0;            // nodes per km^2 (n / region area)

  int n() const { return static_cast<int>(pos.size()); }
};

Region make_disk_region(double radius_km);

// Parses the GeoJSON-style FeatureCollection subset described in the README:
// Polygon features with a positive numeric "weight" property and a top-level
// "crs_mode" of "lonlat" or "planar_km". lonlat coordinates are projected
// with an equirectangular projection about the mean vertex coordinate
// (R_earth = 6371 km). Throws DataError naming the offending feature.
Region parse_region_geojson(const std::string& text, const std::string& origin);

// Reads and parses a region file. Throws DataError on I/O or parse failure.
Region load_region_file(const std::string& path);

// Places n nodes uniformly by area: disks via (r, theta) = (R*sqrt(u1),
// 2*pi*u2), polygons by weighted polygon choice plus bounding-box rejection.
// Consumes the stream in a documented order, so results are reproducible.
NodeSet sample_nodes(const Region& region, int n, rng::Stream& stream);

}  // namespace qnet
