#pragma once

#include <vector>

#include "qnet/graph.hpp"

namespace qnet {
// Slow reference implementations for cross-checking the production code on
// small graphs. Everything here is O(n^3) or worse on purpose.
namespace oracle {

// Floyd-Warshall. hops[i][j] = -1 when unreachable, dist_km likewise -1.
struct AllPairs {
  std::vector<std::vector<int>> hops;
  std::vector<std::vector<double>> dist_km;
};

AllPairs all_pairs(const Graph& g);

// Mean clustering coefficient by direct triangle enumeration.
double clustering(const Graph& g);

// Component label per node by repeated flood fill; labels are the smallest
// node id in the component.
std::vector<int> components(const Graph& g);

// Mean and max hop count over reachable pairs i<j restricted to the largest
// component (ties broken by smallest member id), plus mean physical length
// of the km-shortest paths. Mirrors the production pair statistics.
struct PairSummary {
  double avg_hops = 0.0;
  int diameter_hops = 0;
  double avg_km_dist = 0.0;  // mean over pairs of km-shortest distance
  int giant_size = 0;
};

PairSummary pair_summary(const Graph& g);

}  // namespace oracle
}  // namespace qnet
