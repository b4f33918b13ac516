#include <doctest.h>

#include <vector>

#include "qnet/geometry.hpp"

using namespace qnet;

TEST_SUITE("geometry") {

TEST_CASE("distance is the planar euclidean metric") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({-2, 0}, {2, 0}) == 4.0);
}

TEST_CASE("polygon area via shoelace") {
  const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_area(square) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<Point> tri = {{0, 0}, {2, 0}, {0, 2}};
  CHECK(polygon_area(tri) == doctest::Approx(2.0).epsilon(1e-15));
  // Orientation does not matter.
  const std::vector<Point> cw = {{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  CHECK(polygon_area(cw) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("point_in_polygon even-odd") {
  const std::vector<Point> square = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  CHECK(point_in_polygon({2, 2}, square));
  CHECK_FALSE(point_in_polygon({5, 2}, square));
  CHECK_FALSE(point_in_polygon({-1, -1}, square));

  // Concave: C-shape misses the notch.
  const std::vector<Point> cshape = {{0, 0}, {4, 0}, {4, 1}, {1, 1},
                                     {1, 3}, {4, 3}, {4, 4}, {0, 4}};
  CHECK(point_in_polygon({0.5, 2}, cshape));
  CHECK_FALSE(point_in_polygon({3, 2}, cshape));
}

TEST_CASE("bounding_box") {
  const std::vector<Point> pts = {{1, 7}, {-2, 3}, {5, -4}};
  const BBox b = bounding_box(pts);
  CHECK(b.xmin == -2);
  CHECK(b.xmax == 5);
  CHECK(b.ymin == -4);
  CHECK(b.ymax == 7);
}

TEST_CASE("segments_intersect") {
  CHECK(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  // Shared endpoint counts as intersecting.
  CHECK(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1}));
  // Collinear overlap.
  CHECK(segments_intersect({0, 0}, {3, 0}, {1, 0}, {4, 0}));
  // Collinear but disjoint.
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST_CASE("polygon_is_simple") {
  const std::vector<Point> square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(polygon_is_simple(square));
  // Bowtie self-intersects.
  const std::vector<Point> bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_FALSE(polygon_is_simple(bowtie));
  // Repeated vertex.
  const std::vector<Point> dup = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  CHECK_FALSE(polygon_is_simple(dup));
  // Degenerate: fewer than 3 vertices or zero area.
  const std::vector<Point> two = {{0, 0}, {1, 0}};
  CHECK_FALSE(polygon_is_simple(two));
  const std::vector<Point> flat = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_FALSE(polygon_is_simple(flat));
}

}  // TEST_SUITE
