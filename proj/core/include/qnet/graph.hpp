#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qnet {

struct Edge {
  int32_t u = 0;
  int32_t v = 0;
  double length_km = 0.0;
};

// Undirected graph with per-edge physical lengths. Adjacency is CSR with
// neighbor lists sorted by node id, which keeps every traversal in this
// codebase deterministic.
class Graph {
 public:
  struct Neighbor {
    int32_t to;
    double length_km;
  };

  Graph() = default;
  Graph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  std::span<const Neighbor> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int64_t> offsets_;
  std::vector<Neighbor> adj_;
};

}  // namespace qnet
