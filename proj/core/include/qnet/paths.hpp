#pragma once

#include <cstdint>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

// Single-source shortest-path tree. parent[src] = src; unreachable nodes
// have parent = -1 and hops = -1. length_km is the physical length of the
// tree path (for BFS trees this is the length of the chosen min-hop path,
// not the km-shortest distance).
struct Spt {
  int32_t source = -1;
  std::vector<int32_t> parent;
  std::vector<int32_t> hops;
  std::vector<double> length_km;
  int reached = 0;  // nodes with a path, including the source

  void reset(int n, int src);
};

// BFS tree whose path to every node is the lexicographically smallest
// node sequence among all min-hop paths. Works layer by layer: each node
// adopts the smallest-ranked parent in the previous layer, and layers are
// ranked by (parent rank, node id), which orders equal-length sequences
// exactly like std::lexicographical_compare on the full paths would.
void lex_bfs_tree(const Graph& g, int src, Spt& out);

// Dijkstra tree over physical lengths; on exact distance ties it keeps the
// path whose node sequence is lexicographically smaller.
void lex_dijkstra_tree(const Graph& g, int src, Spt& out);

// Nodes of the tree path src -> target, both endpoints included.
std::vector<int32_t> extract_path(const Spt& tree, int target);

}  // namespace qnet
