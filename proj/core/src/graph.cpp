#include "qnet/graph.hpp"

#include <algorithm>
#include <cmath>

#include "qnet/errors.hpp"

namespace qnet {

Graph::Graph(int num_nodes, std::vector<Edge> edges)
    : n_(num_nodes), edges_(std::move(edges)) {
  if (n_ < 0) throw DataError("graph: negative node count");
  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || e.u == e.v) {
      throw DataError("graph: edge endpoints out of range");
    }
    if (!std::isfinite(e.length_km) || e.length_km < 0.0) {
      throw DataError("graph: edge length must be finite and non-negative");
    }
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adj_.resize(offsets_[n_]);
  std::vector<int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]++] = {e.v, e.length_km};
    adj_[cursor[e.v]++] = {e.u, e.length_km};
  }
  for (int v = 0; v < n_; ++v) {
    std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
}

}  // namespace qnet
