#pragma once

#include <cstdint>

#include "qnet/graph.hpp"
#include "qnet/region.hpp"

namespace qnet {

// Parameters of the two-layer network model. The fiber layer is a Waxman
// random graph; the photonic layer keeps a fiber link when at least one of
// photons_per_link photons survives it.
struct NetParams {
  double beta = 1.0;              // Waxman amplitude
  double char_length_km = 226.0;  // Waxman characteristic length (alpha * L)
  double gamma_db_per_km = 0.2;   // fiber attenuation
  int photons_per_link = 1000;    // photons attempted per link and clock tick

  void validate() const;  // throws ConfigError
};

// Pi(d) = beta * exp(-d / char_length).
double waxman_edge_prob(double d_km, const NetParams& params);

// p(d) = 10^(-gamma * d / 10).
double photon_survival_prob(double d_km, double gamma_db_per_km);

// P(d) = 1 - (1 - p(d))^n_p, evaluated in log space so the n_p = 1000
// power does not round to 1 prematurely.
double photonic_link_prob(double d_km, const NetParams& params);

// Distinct layer tags keep fiber and photonic draws on independent
// substreams derived from the same sample seed.
inline constexpr uint64_t kFiberLayerTag = 0x66696265;     // "fibe"
inline constexpr uint64_t kPhotonicLayerTag = 0x70686f74;  // "phot"

// Draws the Waxman fiber graph over the node set. Every unordered pair
// (i, j) uses the uniform derive(seed, i, j, fiber_tag), so the graph is a
// pure function of (nodes, params, seed) independent of iteration order.
Graph build_fiber_graph(const NodeSet& nodes, const NetParams& params, uint64_t seed);

// Thins the fiber graph: edge (i, j) survives with photonic_link_prob,
// drawn from derive(seed, i, j, photonic_tag). Node count and ids are
// preserved; isolated nodes just lose their links.
Graph build_photonic_graph(const Graph& fiber, const NetParams& params, uint64_t seed);

}  // namespace qnet
