#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/region.hpp"
#include "qnet/repeater.hpp"

namespace qnet {

// Canonical float formatting for every file this tool writes: %.17g keeps
// doubles round-trippable, so stats recomputed from an exported graph are
// bit-identical to the in-process pipeline.
std::string format_double(double v);

// Node table: id,x_km,y_km,region_id
void write_nodes_csv(const std::string& path, const NodeSet& nodes);
NodeSet read_nodes_csv(const std::string& path);

// Edge table for both layers: i,j,d_km,layer with layer in {fiber, photonic}.
void write_edges_csv(const std::string& path, const Graph& fiber,
                     const Graph& photonic);
// Returns the requested layer; node count comes from the node table.
Graph read_edges_csv(const std::string& path, int num_nodes, const std::string& layer);

struct StatsRow {
  uint64_t seed = 0;
  int n = 0;
  double rho = 0.0;
  double ng_over_n = 0.0;
  double avg_c = 0.0;
  double avg_l_hops = 0.0;
  int diameter_hops = 0;
  double avg_dist_m = 0.0;  // physical length of km-shortest paths
};

std::string stats_header();
std::string stats_row(const StatsRow& row);

// Histogram table: bin_lo,bin_hi,count,density
void write_histogram_csv(const std::string& path, const Histogram& hist);
void write_degree_histogram_csv(const std::string& path, const DegreeHistogram& hist);
void write_hop_histogram_csv(const std::string& path,
                             const std::vector<int64_t>& hop_histogram);

// Rate table: u,v,mode,m,L_km,P0,T_mean_s,rate_hz
void write_rates_csv(const std::string& path, const RateSummary& summary,
                     const RepeaterParams& params);

// Whole-file helpers.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qnet
