#pragma once

#include <cstdint>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

// Fixed-width linear binning over [lo, hi).
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int64_t> counts;

  double bin_width() const {
    return counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size());
  }
  void add(double x);
  int64_t total() const;
};

struct DegreeHistogram {
  std::vector<int64_t> counts;  // counts[k] = number of nodes with degree k
  int64_t n_nodes = 0;
  double mean_degree = 0.0;

  struct Bin {
    double lo = 0.0, hi = 0.0;
    double density = 0.0;  // normalized so sum(density * width) = 1
  };
  std::vector<Bin> bins;
};

// Linear-bin schedule used for degree plots: 16 bins at N = 200 ramping to
// 28 at N = 2000, clamped outside that range.
int default_bin_count(int n_nodes);

// Tallies degrees and lays num_bins linear bins over [0, k_max + 1).
// num_bins <= 0 selects default_bin_count(N).
DegreeHistogram degree_histogram(const Graph& g, int num_bins = 0);

// Merges per-sample degree counts (acceptance tests pool ensembles).
DegreeHistogram pool_degree_histograms(const std::vector<DegreeHistogram>& parts,
                                       int num_bins = 0);

struct Components {
  std::vector<int32_t> label;  // component id per node, ids in discovery order
  std::vector<int32_t> size;   // size per component id
  int32_t giant = -1;          // largest component; ties go to the one
                               // containing the smallest node id
  std::vector<int32_t> giant_nodes;  // ascending node ids

  int count() const { return static_cast<int>(size.size()); }
  double giant_fraction(int n) const {
    return n > 0 ? static_cast<double>(size[giant]) / n : 0.0;
  }
};

Components connected_components(const Graph& g);

// Average local clustering coefficient; nodes with degree < 2 contribute 0.
double clustering_coefficient(const Graph& g);

// Pairwise path statistics over the giant cluster. avg_path_hops and
// diameter_hops are always hop counts of the selected paths;
// avg_path_length_m is their physical length in meters. For the hop mode
// the selected paths are lexicographically smallest min-hop paths, for the
// km mode they are km-shortest paths, so both (hops, length) pairs match
// what the repeater chain sees.
struct PathStats {
  double avg_path_hops = 0.0;
  int diameter_hops = 0;
  double avg_path_length_m = 0.0;
  std::vector<int64_t> hop_histogram;  // index = hop count
  Histogram length_histogram;          // km
  int64_t n_pairs = 0;
  int giant_size = 0;
};

// Throws DataError when the giant cluster has fewer than 2 nodes (the
// averages are undefined).
PathStats shortest_paths_hops(const Graph& g, const Components& comps);

// Same statistics along km-shortest paths. Requires strictly positive edge
// lengths (throws DataError otherwise).
PathStats shortest_paths_km(const Graph& g, const Components& comps);

}  // namespace qnet
