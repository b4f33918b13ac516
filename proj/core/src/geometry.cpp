#include "qnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qnet {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double polygon_area(std::span<const Point> v) {
  const size_t n = v.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += v[j].x * v[i].y - v[i].x * v[j].y;
  }
  return std::abs(twice) * 0.5;
}

bool point_in_polygon(const Point& p, std::span<const Point> v) {
  const size_t n = v.size();
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool crosses = (v[i].y > p.y) != (v[j].y > p.y);
    if (!crosses) continue;
    const double x_at =
        v[j].x + (v[i].x - v[j].x) * (p.y - v[j].y) / (v[i].y - v[j].y);
    if (p.x < x_at) inside = !inside;
  }
  return inside;
}

BBox bounding_box(std::span<const Point> v) {
  BBox b;
  if (v.empty()) return b;
  b.xmin = b.xmax = v[0].x;
  b.ymin = b.ymax = v[0].y;
  for (const Point& p : v) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

namespace {

int orientation(const Point& a, const Point& b, const Point& c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (cross > 0.0) return 1;
  if (cross < 0.0) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool polygon_is_simple(std::span<const Point> v) {
  const size_t n = v.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (v[i].x == v[j].x && v[i].y == v[j].y) return false;
    }
  }
  // Pairwise check of non-adjacent edges. Quadratic, fine for region files.
  for (size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Point& c = v[j];
      const Point& d = v[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return polygon_area(v) > 0.0;
}

}  // namespace qnet
