#include "qnet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/paths.hpp"

namespace qnet {

void Histogram::add(double x) {
  if (counts.empty() || hi <= lo) return;
  if (x < lo || x >= hi) return;
  const size_t k = static_cast<size_t>((x - lo) / (hi - lo) * counts.size());
  counts[std::min(k, counts.size() - 1)]++;
}

int64_t Histogram::total() const {
  int64_t t = 0;
  for (int64_t c : counts) t += c;
  return t;
}

int default_bin_count(int n_nodes) {
  const double raw = 16.0 + 12.0 * (n_nodes - 200.0) / 1800.0;
  const int rounded = static_cast<int>(std::lround(raw));
  return std::clamp(rounded, 16, 28);
}

namespace {

DegreeHistogram finish_histogram(std::vector<int64_t> counts, int64_t n_nodes,
                                 int64_t degree_total, int num_bins) {
  DegreeHistogram h;
  h.counts = std::move(counts);
  h.n_nodes = n_nodes;
  h.mean_degree = n_nodes > 0 ? static_cast<double>(degree_total) / n_nodes : 0.0;
  if (num_bins <= 0) num_bins = default_bin_count(static_cast<int>(n_nodes));
  const double span = static_cast<double>(h.counts.size());  // [0, k_max + 1)
  h.bins.resize(num_bins);
  for (int b = 0; b < num_bins; ++b) {
    h.bins[b].lo = span * b / num_bins;
    h.bins[b].hi = span * (b + 1) / num_bins;
  }
  if (n_nodes == 0) return h;
  for (size_t k = 0; k < h.counts.size(); ++k) {
    const int b = std::min<int>(static_cast<int>(k / span * num_bins), num_bins - 1);
    h.bins[b].density += static_cast<double>(h.counts[k]);
  }
  for (DegreeHistogram::Bin& bin : h.bins) {
    bin.density /= static_cast<double>(n_nodes) * (bin.hi - bin.lo);
  }
  return h;
}

}  // namespace

DegreeHistogram degree_histogram(const Graph& g, int num_bins) {
  const int n = g.num_nodes();
  int max_deg = 0;
  for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, g.degree(v));
  std::vector<int64_t> counts(max_deg + 1, 0);
  int64_t total = 0;
  for (int v = 0; v < n; ++v) {
    counts[g.degree(v)]++;
    total += g.degree(v);
  }
  return finish_histogram(std::move(counts), n, total, num_bins);
}

DegreeHistogram pool_degree_histograms(const std::vector<DegreeHistogram>& parts,
                                       int num_bins) {
  size_t width = 1;
  for (const DegreeHistogram& p : parts) width = std::max(width, p.counts.size());
  std::vector<int64_t> counts(width, 0);
  int64_t n_nodes = 0;
  int64_t total = 0;
  for (const DegreeHistogram& p : parts) {
    n_nodes += p.n_nodes;
    for (size_t k = 0; k < p.counts.size(); ++k) {
      counts[k] += p.counts[k];
      total += p.counts[k] * static_cast<int64_t>(k);
    }
  }
  return finish_histogram(std::move(counts), n_nodes, total, num_bins);
}

Components connected_components(const Graph& g) {
  const int n = g.num_nodes();
  Components c;
  c.label.assign(n, -1);
  std::vector<int32_t> stack;
  for (int v = 0; v < n; ++v) {
    if (c.label[v] != -1) continue;
    const int32_t id = static_cast<int32_t>(c.size.size());
    int32_t members = 0;
    stack.push_back(v);
    c.label[v] = id;
    while (!stack.empty()) {
      const int32_t w = stack.back();
      stack.pop_back();
      ++members;
      for (const Graph::Neighbor& nb : g.neighbors(w)) {
        if (c.label[nb.to] == -1) {
          c.label[nb.to] = id;
          stack.push_back(nb.to);
        }
      }
    }
    c.size.push_back(members);
  }
  // Components are discovered in order of their smallest node id, so the
  // first maximum implements the smallest-min-id tie-break.
  for (int32_t id = 0; id < c.count(); ++id) {
    if (c.giant == -1 || c.size[id] > c.size[c.giant]) c.giant = id;
  }
  if (c.giant != -1) {
    for (int32_t v = 0; v < n; ++v) {
      if (c.label[v] == c.giant) c.giant_nodes.push_back(v);
    }
  }
  return c;
}

double clustering_coefficient(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return 0.0;
  std::vector<char> mark(n, 0);
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    const int k = g.degree(v);
    if (k < 2) continue;
    for (const Graph::Neighbor& nb : g.neighbors(v)) mark[nb.to] = 1;
    int64_t links = 0;
    for (const Graph::Neighbor& nb : g.neighbors(v)) {
      for (const Graph::Neighbor& nb2 : g.neighbors(nb.to)) {
        if (nb2.to > nb.to && mark[nb2.to]) ++links;
      }
    }
    for (const Graph::Neighbor& nb : g.neighbors(v)) mark[nb.to] = 0;
    sum += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
  }
  return sum / n;
}

namespace {

PathStats pair_stats(const Graph& g, const Components& comps, bool km_mode) {
  if (comps.giant == -1 || comps.size[comps.giant] < 2) {
    throw DataError("path stats: giant cluster has fewer than 2 nodes");
  }
  if (km_mode) {
    for (const Edge& e : g.edges()) {
      if (!(e.length_km > 0.0)) {
        throw DataError("path stats: km mode requires positive edge lengths");
      }
    }
  }
  const std::vector<int32_t>& nodes = comps.giant_nodes;
  PathStats st;
  st.giant_size = static_cast<int>(nodes.size());

  double hop_sum = 0.0;
  double len_sum = 0.0;
  std::vector<double> lengths;
  Spt tree;
  for (const int32_t src : nodes) {
    if (km_mode) {
      lex_dijkstra_tree(g, src, tree);
    } else {
      lex_bfs_tree(g, src, tree);
    }
    for (const int32_t dst : nodes) {
      if (dst <= src) continue;
      const int h = tree.hops[dst];
      if (h < 0) continue;  // cannot happen inside one component
      hop_sum += h;
      len_sum += tree.length_km[dst];
      if (static_cast<size_t>(h) >= st.hop_histogram.size()) {
        st.hop_histogram.resize(h + 1, 0);
      }
      st.hop_histogram[h]++;
      lengths.push_back(tree.length_km[dst]);
      st.diameter_hops = std::max(st.diameter_hops, h);
      st.n_pairs++;
    }
  }
  st.avg_path_hops = hop_sum / static_cast<double>(st.n_pairs);
  st.avg_path_length_m = len_sum / static_cast<double>(st.n_pairs) * 1000.0;
  double max_len = 0.0;
  for (const double L : lengths) max_len = std::max(max_len, L);
  st.length_histogram.lo = 0.0;
  st.length_histogram.hi = max_len > 0.0 ? max_len * (1.0 + 1e-9) : 1.0;
  st.length_histogram.counts.assign(64, 0);
  for (const double L : lengths) st.length_histogram.add(L);
  return st;
}

}  // namespace

PathStats shortest_paths_hops(const Graph& g, const Components& comps) {
  return pair_stats(g, comps, false);
}

PathStats shortest_paths_km(const Graph& g, const Components& comps) {
  return pair_stats(g, comps, true);
}

}  // namespace qnet
