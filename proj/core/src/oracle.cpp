#include "qnet/oracle.hpp"

#include <algorithm>
#include <limits>

namespace qnet {
namespace oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

AllPairs all_pairs(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<double>> h(n, std::vector<double>(n, kInf));
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) {
    h[i][i] = 0.0;
    d[i][i] = 0.0;
    for (const Graph::Neighbor& nb : g.neighbors(i)) {
      h[i][nb.to] = 1.0;
      d[i][nb.to] = std::min(d[i][nb.to], nb.length_km);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        h[i][j] = std::min(h[i][j], h[i][k] + h[k][j]);
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  AllPairs out;
  out.hops.assign(n, std::vector<int>(n, -1));
  out.dist_km.assign(n, std::vector<double>(n, -1.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h[i][j] < kInf) out.hops[i][j] = static_cast<int>(h[i][j]);
      if (d[i][j] < kInf) out.dist_km[i][j] = d[i][j];
    }
  }
  return out;
}

double clustering(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return 0.0;
  auto connected = [&](int a, int b) {
    for (const Graph::Neighbor& nb : g.neighbors(a)) {
      if (nb.to == b) return true;
    }
    return false;
  };
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    std::vector<int> nbrs;
    for (const Graph::Neighbor& nb : g.neighbors(v)) nbrs.push_back(nb.to);
    const int k = static_cast<int>(nbrs.size());
    if (k < 2) continue;
    int links = 0;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (connected(nbrs[a], nbrs[b])) ++links;
      }
    }
    sum += 2.0 * links / (static_cast<double>(k) * (k - 1));
  }
  return sum / n;
}

std::vector<int> components(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> label(n, -1);
  for (int start = 0; start < n; ++start) {
    if (label[start] != -1) continue;
    std::vector<int> stack{start};
    label[start] = start;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Graph::Neighbor& nb : g.neighbors(v)) {
        if (label[nb.to] == -1) {
          label[nb.to] = start;
          stack.push_back(nb.to);
        }
      }
    }
  }
  return label;
}

PairSummary pair_summary(const Graph& g) {
  const AllPairs ap = all_pairs(g);
  const std::vector<int> label = components(g);
  const int n = g.num_nodes();

  std::vector<int> count(n, 0);
  for (int v = 0; v < n; ++v) ++count[label[v]];
  int giant = -1;
  for (int v = 0; v < n; ++v) {
    if (giant == -1 || count[v] > count[giant]) giant = v;
  }

  PairSummary out;
  if (giant == -1) return out;
  out.giant_size = count[giant];

  int64_t pairs = 0;
  double hop_sum = 0.0;
  double km_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (label[i] != giant) continue;
    for (int j = i + 1; j < n; ++j) {
      if (label[j] != giant) continue;
      ++pairs;
      hop_sum += ap.hops[i][j];
      km_sum += ap.dist_km[i][j];
      out.diameter_hops = std::max(out.diameter_hops, ap.hops[i][j]);
    }
  }
  if (pairs > 0) {
    out.avg_hops = hop_sum / pairs;
    out.avg_km_dist = km_sum / pairs;
  }
  return out;
}

}  // namespace oracle
}  // namespace qnet
