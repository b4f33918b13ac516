#include "qnet/netgen.hpp"

#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/geometry.hpp"

namespace qnet {

void NetParams::validate() const {
  if (!(beta > 0.0) || beta > 1.0 || !std::isfinite(beta)) {
    throw ConfigError("net params: beta must be in (0, 1]");
  }
  if (!(char_length_km > 0.0) || !std::isfinite(char_length_km)) {
    throw ConfigError("net params: char_length_km must be positive");
  }
  if (gamma_db_per_km < 0.0 || !std::isfinite(gamma_db_per_km)) {
    throw ConfigError("net params: gamma_db_per_km must be non-negative");
  }
  if (photons_per_link < 1) {
    throw ConfigError("net params: photons_per_link must be >= 1");
  }
}

double waxman_edge_prob(double d_km, const NetParams& params) {
  return params.beta * std::exp(-d_km / params.char_length_km);
}

double photon_survival_prob(double d_km, double gamma_db_per_km) {
  return std::pow(10.0, -gamma_db_per_km * d_km / 10.0);
}

double photonic_link_prob(double d_km, const NetParams& params) {
  const double p = photon_survival_prob(d_km, params.gamma_db_per_km);
  if (p >= 1.0) return 1.0;
  return -std::expm1(params.photons_per_link * std::log1p(-p));
}

Graph build_fiber_graph(const NodeSet& nodes, const NetParams& params, uint64_t seed) {
  params.validate();
  const int n = nodes.n();
  std::vector<Edge> edges;
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = i + 1; j < n; ++j) {
      const double d = distance(nodes.pos[i], nodes.pos[j]);
      const double u = rng::unit_from_key(rng::derive(seed, i, j, kFiberLayerTag));
      if (u < waxman_edge_prob(d, params)) edges.push_back({i, j, d});
    }
  }
  return Graph(n, std::move(edges));
}

Graph build_photonic_graph(const Graph& fiber, const NetParams& params, uint64_t seed) {
  params.validate();
  std::vector<Edge> kept;
  kept.reserve(fiber.num_edges());
  for (const Edge& e : fiber.edges()) {
    const double u = rng::unit_from_key(rng::derive(seed, e.u, e.v, kPhotonicLayerTag));
    if (u < photonic_link_prob(e.length_km, params)) kept.push_back(e);
  }
  return Graph(fiber.num_nodes(), std::move(kept));
}

}  // namespace qnet
