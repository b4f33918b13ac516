#include <doctest.h>

#include <cmath>
#include <vector>

#include "qnet/errors.hpp"
#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/oracle.hpp"
#include "qnet/paths.hpp"
#include "qnet/rng.hpp"

using namespace qnet;

namespace {

Graph star5() {
  // Node 0 joined to 1..4.
  std::vector<Edge> e = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}};
  return Graph(5, e);
}

Graph path3() {
  std::vector<Edge> e = {{0, 1, 1}, {1, 2, 1}};
  return Graph(3, e);
}

Graph square_with_chord() {
  std::vector<Edge> e = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}, {0, 2, 1}};
  return Graph(4, e);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("graph construction validates input") {
  std::vector<Edge> bad1 = {{0, 5, 1.0}};
  CHECK_THROWS_AS(Graph(3, bad1), DataError);
  std::vector<Edge> bad2 = {{1, 1, 1.0}};
  CHECK_THROWS_AS(Graph(3, bad2), DataError);
  std::vector<Edge> bad3 = {{0, 1, -2.0}};
  CHECK_THROWS_AS(Graph(3, bad3), DataError);
  std::vector<Edge> ok = {{2, 0, 7.0}};
  const Graph g(3, ok);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 0);
  CHECK(g.neighbors(2)[0].to == 0);
}

TEST_CASE("degree histogram on the star") {
  const Graph g = star5();
  const DegreeHistogram h = degree_histogram(g, 5);
  CHECK(h.n_nodes == 5);
  CHECK(h.mean_degree == doctest::Approx(1.6).epsilon(1e-15));
  REQUIRE(h.counts.size() == 5);  // degrees 0..4
  CHECK(h.counts[1] == 4);
  CHECK(h.counts[4] == 1);
  double mass = 0.0;
  for (const DegreeHistogram::Bin& b : h.bins) mass += b.density * (b.hi - b.lo);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("default bin count rule") {
  CHECK(default_bin_count(200) == 16);
  CHECK(default_bin_count(2000) == 28);
  CHECK(default_bin_count(1100) == 22);
  CHECK(default_bin_count(50) == 16);    // clamped low
  CHECK(default_bin_count(9999) == 28);  // clamped high
}

TEST_CASE("pooling degree histograms sums counts") {
  const DegreeHistogram a = degree_histogram(star5(), 4);
  const DegreeHistogram b = degree_histogram(path3(), 4);
  const DegreeHistogram pooled = pool_degree_histograms({a, b}, 4);
  CHECK(pooled.n_nodes == 8);
  CHECK(pooled.counts[1] == 4 + 2);
  CHECK(pooled.mean_degree ==
        doctest::Approx((4 * 2 + 2 * 2) / 8.0).epsilon(1e-15));
}

TEST_CASE("clustering on the chorded square is 5/6") {
  CHECK(clustering_coefficient(square_with_chord()) ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(clustering_coefficient(star5()) == 0.0);  // no triangles
  std::vector<Edge> tri = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
  CHECK(clustering_coefficient(Graph(3, tri)) == doctest::Approx(1.0));
  const Graph empty(4, {});
  CHECK(clustering_coefficient(empty) == 0.0);
}

TEST_CASE("components and the giant tie-break") {
  // Two components of size 2 plus an isolated node: the giant is the one
  // holding the smallest node id.
  std::vector<Edge> e = {{3, 4, 1}, {0, 1, 1}};
  const Graph g(5, e);
  const Components c = connected_components(g);
  CHECK(c.count() == 3);
  CHECK(c.size[c.giant] == 2);
  REQUIRE(c.giant_nodes.size() == 2);
  CHECK(c.giant_nodes[0] == 0);
  CHECK(c.giant_nodes[1] == 1);
  CHECK(c.giant_fraction(5) == doctest::Approx(0.4));
  CHECK(c.label[3] == c.label[4]);
  CHECK(c.label[0] != c.label[3]);
}

TEST_CASE("path stats on the 3-path") {
  const Graph g = path3();
  const Components c = connected_components(g);
  const PathStats st = shortest_paths_hops(g, c);
  CHECK(st.n_pairs == 3);
  CHECK(st.avg_path_hops == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(st.diameter_hops == 2);
  REQUIRE(st.hop_histogram.size() == 3);
  CHECK(st.hop_histogram[1] == 2);
  CHECK(st.hop_histogram[2] == 1);
}

TEST_CASE("km paths prefer the lighter route") {
  // Triangle: direct 0-2 edge costs 6, detour through 1 costs 3 + 4 = 7.
  std::vector<Edge> e = {{0, 1, 3}, {1, 2, 4}, {0, 2, 6}};
  const Graph g(3, e);
  const Components c = connected_components(g);
  const PathStats km = shortest_paths_km(g, c);
  // Pairs: (0,1) = 3, (0,2) = 6 direct, (1,2) = 4; mean km = 13/3.
  CHECK(km.avg_path_length_m ==
        doctest::Approx(13.0 / 3.0 * 1000.0).epsilon(1e-15));

  // Make the detour cheaper than the direct edge and the hop count grows.
  std::vector<Edge> e2 = {{0, 1, 3}, {1, 2, 4}, {0, 2, 9}};
  const Graph g2(3, e2);
  const PathStats km2 = shortest_paths_km(g2, connected_components(g2));
  CHECK(km2.avg_path_length_m ==
        doctest::Approx((3 + 7 + 4) / 3.0 * 1000.0).epsilon(1e-15));
  CHECK(km2.diameter_hops == 2);

  // Zero-length edge is rejected in km mode.
  std::vector<Edge> e3 = {{0, 1, 0.0}, {1, 2, 4}};
  const Graph g3(3, e3);
  CHECK_THROWS_AS(shortest_paths_km(g3, connected_components(g3)), DataError);
}

TEST_CASE("degenerate giant throws") {
  const Graph isolated(3, {});
  CHECK_THROWS_AS(shortest_paths_hops(isolated, connected_components(isolated)),
                  DataError);
}

TEST_CASE("lexicographic tie-breaks are deterministic") {
  // Diamond: 0-1-3 and 0-2-3 are both 2-hop routes; the tree must pick the
  // route through node 1 for target 3.
  std::vector<Edge> e = {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}};
  const Graph g(4, e);
  Spt tree;
  lex_bfs_tree(g, 0, tree);
  CHECK(tree.parent[3] == 1);
  const std::vector<int32_t> path = extract_path(tree, 3);
  REQUIRE(path.size() == 3);
  CHECK(path[0] == 0);
  CHECK(path[1] == 1);
  CHECK(path[2] == 3);

  // Same tie in km mode (equal lengths).
  Spt dtree;
  lex_dijkstra_tree(g, 0, dtree);
  CHECK(dtree.parent[3] == 1);
}

TEST_CASE("small random graphs agree with the brute-force oracle") {
  rng::Stream seeds(24680);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(seeds.below(7));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (seeds.uniform01() < 0.45) {
          edges.push_back({i, j, static_cast<double>(1 + seeds.below(9))});
        }
      }
    }
    const Graph g(n, edges);
    const Components c = connected_components(g);
    const std::vector<int> olabel = oracle::components(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        REQUIRE((c.label[i] == c.label[j]) == (olabel[i] == olabel[j]));
      }
    }
    REQUIRE(clustering_coefficient(g) == oracle::clustering(g));

    const oracle::PairSummary ref = oracle::pair_summary(g);
    if (ref.giant_size < 2) continue;
    const PathStats hops = shortest_paths_hops(g, c);
    const PathStats km = shortest_paths_km(g, c);
    REQUIRE(hops.avg_path_hops == ref.avg_hops);
    REQUIRE(hops.diameter_hops == ref.diameter_hops);
    REQUIRE(km.avg_path_length_m == ref.avg_km_dist * 1000.0);
  }
}

TEST_CASE("histogram add and bounds") {
  Histogram h;
  h.lo = 0.0;
  h.hi = 10.0;
  h.counts.assign(5, 0);
  h.add(0.0);
  h.add(9.9999);
  h.add(5.0);
  h.add(10.0);   // out of range: dropped
  h.add(-0.01);  // out of range: dropped
  CHECK(h.total() == 3);
  CHECK(h.counts[0] == 1);
  CHECK(h.counts[4] == 1);
  CHECK(h.counts[2] == 1);
  CHECK(h.bin_width() == doctest::Approx(2.0));
}

}  // TEST_SUITE
