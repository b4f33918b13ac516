#pragma once

#include <span>
#include <vector>

namespace qnet {

struct Point {
  double x = 0.0;  // km
  double y = 0.0;  // km
};

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

double distance(const Point& a, const Point& b);

// Unsigned area of a (not necessarily closed) simple polygon, shoelace rule.
double polygon_area(std::span<const Point> vertices);

// Even-odd rule; points exactly on the boundary are not guaranteed either way.
bool point_in_polygon(const Point& p, std::span<const Point> vertices);

BBox bounding_box(std::span<const Point> vertices);

// True if segments ab and cd share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d);

// A polygon is simple when it has >= 3 vertices, no repeated vertices, no
// two non-adjacent edges touching, and nonzero area.
bool polygon_is_simple(std::span<const Point> vertices);

}  // namespace qnet
