#include "qnet/paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "qnet/errors.hpp"

namespace qnet {

void Spt::reset(int n, int src) {
  source = src;
  parent.assign(n, -1);
  hops.assign(n, -1);
  length_km.assign(n, 0.0);
  reached = 1;
  parent[src] = src;
  hops[src] = 0;
}

void lex_bfs_tree(const Graph& g, int src, Spt& out) {
  const int n = g.num_nodes();
  out.reset(n, src);
  std::vector<int32_t> rank(n, 0);
  std::vector<int32_t> layer{static_cast<int32_t>(src)};
  std::vector<int32_t> next;
  while (!layer.empty()) {
    next.clear();
    for (const int32_t w : layer) {
      for (const Graph::Neighbor& nb : g.neighbors(w)) {
        if (out.hops[nb.to] != -1) continue;
        out.parent[nb.to] = w;
        out.hops[nb.to] = out.hops[w] + 1;
        out.length_km[nb.to] = out.length_km[w] + nb.length_km;
        next.push_back(nb.to);
      }
    }
    std::sort(next.begin(), next.end(), [&](int32_t a, int32_t b) {
      if (rank[out.parent[a]] != rank[out.parent[b]]) {
        return rank[out.parent[a]] < rank[out.parent[b]];
      }
      return a < b;
    });
    for (size_t i = 0; i < next.size(); ++i) rank[next[i]] = static_cast<int32_t>(i);
    out.reached += static_cast<int>(next.size());
    layer.swap(next);
  }
}

namespace {

std::vector<int32_t> tree_path(const Spt& t, int32_t x) {
  std::vector<int32_t> path;
  while (true) {
    path.push_back(x);
    if (x == t.source) break;
    x = t.parent[x];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// True if the path (tree path to w) + v is lexicographically smaller than
// (tree path to p) + v. Only consulted on exact distance ties, so the
// quadratic path reconstruction never shows up in profiles.
bool candidate_path_less(const Spt& t, int32_t w, int32_t p, int32_t v) {
  std::vector<int32_t> a = tree_path(t, w);
  a.push_back(v);
  std::vector<int32_t> b = tree_path(t, p);
  b.push_back(v);
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

void lex_dijkstra_tree(const Graph& g, int src, Spt& out) {
  const int n = g.num_nodes();
  out.reset(n, src);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<char> settled(n, 0);
  dist[src] = 0.0;
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.push({0.0, static_cast<int32_t>(src)});
  int reached = 0;
  while (!heap.empty()) {
    const auto [d, w] = heap.top();
    heap.pop();
    if (settled[w]) continue;
    settled[w] = 1;
    ++reached;
    for (const Graph::Neighbor& nb : g.neighbors(w)) {
      const int32_t v = nb.to;
      if (settled[v]) continue;
      const double nd = d + nb.length_km;
      if (nd < dist[v]) {
        dist[v] = nd;
        out.parent[v] = w;
        out.hops[v] = out.hops[w] + 1;
        heap.push({nd, v});
      } else if (nd == dist[v] && candidate_path_less(out, w, out.parent[v], v)) {
        out.parent[v] = w;
        out.hops[v] = out.hops[w] + 1;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (settled[v]) out.length_km[v] = dist[v];
  }
  out.reached = reached;
}

std::vector<int32_t> extract_path(const Spt& tree, int target) {
  if (tree.hops[target] < 0) throw DataError("extract_path: target unreachable");
  return tree_path(tree, static_cast<int32_t>(target));
}

}  // namespace qnet
