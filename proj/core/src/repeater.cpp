#include "qnet/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qnet/errors.hpp"
#include "qnet/mathutil.hpp"
#include "qnet/paths.hpp"

namespace qnet {

const char* to_string(PathMode mode) {
  return mode == PathMode::hops ? "hops" : "km";
}

PathMode path_mode_from_string(const std::string& s) {
  if (s == "hops") return PathMode::hops;
  if (s == "km") return PathMode::km;
  throw ConfigError("unknown path mode '" + s + "' (expected 'hops' or 'km')");
}

PathResult select_path(const Graph& g, int u, int v, PathMode mode) {
  if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes()) {
    throw DataError("select_path: node id out of range");
  }
  if (u == v) throw DataError("select_path: endpoints must differ");
  Spt tree;
  if (mode == PathMode::km) {
    for (const Edge& e : g.edges()) {
      if (!(e.length_km > 0.0)) {
        throw DataError("select_path: km mode requires positive edge lengths");
      }
    }
    lex_dijkstra_tree(g, u, tree);
  } else {
    lex_bfs_tree(g, u, tree);
  }
  if (tree.hops[v] < 0) throw DataError("select_path: no path between endpoints");
  PathResult r;
  r.u = static_cast<int32_t>(u);
  r.v = static_cast<int32_t>(v);
  r.mode = mode;
  r.m = tree.hops[v];
  r.length_km = tree.length_km[v];
  r.nodes = extract_path(tree, v);
  return r;
}

double segment_success_prob(double segment_km, double gamma_db_per_km) {
  return std::pow(10.0, -gamma_db_per_km * segment_km / 10.0);
}

namespace {

void check_z_domain(int m, double p) {
  if (m < 1) throw std::domain_error("z_steps: m must be >= 1");
  if (!(p > 0.0) || p > 1.0) throw std::domain_error("z_steps: need 0 < p <= 1");
}

// Survival sum with an exact tail. The head is the literal series; once
// q^t <= qT the remaining sum equals sum_j (-1)^(j+1) C(m,j) q^(Tj)/(1-q^j)
// (binomial expansion of the tail), which converges in a handful of terms
// because m * q^T is kept small.
double z_survival_accelerated(int m, double p) {
  if (p >= 1.0) return 1.0;
  const double q = 1.0 - p;
  const double lq = std::log1p(-p);
  const double target = std::min(1e-3, 0.1 / m);
  const int64_t head = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(std::log(target) / lq)));
  double z = 1.0;  // t = 0 term
  double qt = q;
  for (int64_t t = 1; t < head; ++t) {
    z += -std::expm1(m * std::log1p(-qt));
    qt *= q;
  }
  // qt == q^head here.
  double coeff = 1.0;
  double qtj = 1.0;
  for (int j = 1; j <= m; ++j) {
    coeff *= static_cast<double>(m - j + 1) / j;
    qtj *= qt;
    const double term = coeff * qtj / -std::expm1(j * lq);
    z += (j & 1) ? term : -term;
    if (std::abs(term) < 1e-15 * z) break;
  }
  return z;
}

}  // namespace

double z_steps_binomial(int m, double p, double* error_estimate) {
  check_z_domain(m, p);
  const double lq = std::log1p(-p);  // log(1-p)
  CompensatedSum sum;
  double coeff = 1.0;  // C(m, j), exact in double for m <= 30
  for (int j = 1; j <= m; ++j) {
    coeff *= static_cast<double>(m - j + 1) / j;
    const double denom = -std::expm1(j * lq);  // 1 - (1-p)^j, stable
    const double term = coeff / denom;
    sum.add((j & 1) ? term : -term);
  }
  if (error_estimate != nullptr) *error_estimate = sum.error_estimate();
  return sum.value();
}

double z_steps_survival(int m, double p) {
  check_z_domain(m, p);
  if (p >= 1.0) return 1.0;
  const double q = 1.0 - p;
  double z = 1.0;  // t = 0
  double qt = q;
  while (static_cast<double>(m) * qt / p >= 1e-12) {
    z += -std::expm1(m * std::log1p(-qt));
    qt *= q;
  }
  return z;
}

double z_steps(int m, double p) {
  check_z_domain(m, p);
  if (p >= 1.0) return 1.0;
  if (m == 1) return 1.0 / p;
  if (m == 2) return (3.0 - 2.0 * p) / (p * (2.0 - p));
  const double x = -std::log1p(-p);
  if (m >= 4 && m * x <= 0.25) {
    // Euler-Maclaurin: expanding 1/(1-q^j) = 1/(jx) + 1/2 + Bernoulli
    // corrections, every correction of order < m cancels against the
    // alternating binomial sums, so H_m/x + 1/2 is exact to O(x^m).
    return harmonic(m) / x + 0.5;
  }
  if (m <= 30) {
    double err = 0.0;
    const double z = z_steps_binomial(m, p, &err);
    if (err <= 1e-9 * std::abs(z)) return z;
  }
  return z_survival_accelerated(m, p);
}

ZSample z_monte_carlo(int m, double p, int64_t trials, rng::Stream& stream) {
  check_z_domain(m, p);
  if (trials < 1) throw std::domain_error("z_monte_carlo: trials must be >= 1");
  const double lq = std::log1p(-p);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int64_t t = 0; t < trials; ++t) {
    int64_t worst = 1;
    for (int s = 0; s < m; ++s) {
      int64_t steps = 1;
      if (p < 1.0) {
        // Geometric via inversion: ceil(ln u / ln q), u in (0, 1].
        const double u = 1.0 - stream.uniform01();
        steps = static_cast<int64_t>(std::ceil(std::log(u) / lq));
        if (steps < 1) steps = 1;
      }
      worst = std::max(worst, steps);
    }
    sum += static_cast<double>(worst);
    sum_sq += static_cast<double>(worst) * static_cast<double>(worst);
  }
  ZSample out;
  out.mean = sum / static_cast<double>(trials);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(trials) - out.mean * out.mean);
  out.std_error = std::sqrt(var / static_cast<double>(trials));
  return out;
}

void RateLogHist::add(double rate_hz) {
  if (!(rate_hz > 0.0)) {
    ++underflow;
    return;
  }
  const double exponent = std::log10(rate_hz);
  const double pos = (exponent - kDecadeLo) * kBinsPerDecade;
  if (pos < 0.0) {
    ++underflow;
  } else if (pos >= kBins) {
    ++overflow;
  } else {
    ++counts[static_cast<size_t>(pos)];
  }
}

void RateLogHist::merge(const RateLogHist& other) {
  for (int b = 0; b < kBins; ++b) counts[b] += other.counts[b];
  underflow += other.underflow;
  overflow += other.overflow;
}

double RateLogHist::bin_lo_hz(int b) {
  return std::pow(10.0, kDecadeLo + static_cast<double>(b) / kBinsPerDecade);
}

RateResult mean_time_and_rate(const PathResult& path, const RepeaterParams& params) {
  if (path.m < 1) throw DataError("mean_time_and_rate: path needs >= 1 segment");
  if (!(path.length_km > 0.0)) {
    throw DataError("mean_time_and_rate: path length must be positive");
  }
  const double seg_km = path.length_km / path.m;
  RateResult r;
  r.p0 = segment_success_prob(seg_km, params.gamma_db_per_km);
  r.t0_s = 2.0 * seg_km * 1000.0 / params.signal_speed_m_per_s;
  if (r.p0 <= 0.0) {
    // Attenuation underflowed; the chain never finishes.
    r.z = std::numeric_limits<double>::infinity();
    r.mean_time_s = std::numeric_limits<double>::infinity();
    r.rate_hz = 0.0;
    return r;
  }
  r.z = z_steps(path.m, r.p0);
  r.mean_time_s = r.t0_s * r.z;
  r.rate_hz = 1.0 / r.mean_time_s;
  return r;
}

RateSummary network_rates(const Graph& g, const Components& comps, PathMode mode,
                          const RepeaterParams& params, bool keep_pairs) {
  if (comps.giant == -1 || comps.size[comps.giant] < 2) {
    throw DataError("network_rates: giant cluster has fewer than 2 nodes");
  }
  if (mode == PathMode::km) {
    for (const Edge& e : g.edges()) {
      if (!(e.length_km > 0.0)) {
        throw DataError("network_rates: km mode requires positive edge lengths");
      }
    }
  }
  const std::vector<int32_t>& nodes = comps.giant_nodes;
  RateSummary out;
  out.mode = mode;
  out.giant_size = static_cast<int>(nodes.size());

  std::vector<double> rates;
  Spt tree;
  PathResult path;
  path.mode = mode;
  for (const int32_t src : nodes) {
    if (mode == PathMode::km) {
      lex_dijkstra_tree(g, src, tree);
    } else {
      lex_bfs_tree(g, src, tree);
    }
    for (const int32_t dst : nodes) {
      if (dst <= src) continue;
      path.u = src;
      path.v = dst;
      path.m = tree.hops[dst];
      path.length_km = tree.length_km[dst];
      const RateResult r = mean_time_and_rate(path, params);
      rates.push_back(r.rate_hz);
      out.log_hist.add(r.rate_hz);
      if (keep_pairs) {
        out.pairs.push_back({src, dst, path.m, path.length_km, r.rate_hz});
      }
    }
  }
  out.n_pairs = static_cast<int64_t>(rates.size());
  CompensatedSum sum;
  for (const double r : rates) {
    sum.add(r);
    out.max_rate_hz = std::max(out.max_rate_hz, r);
  }
  out.avg_rate_hz = sum.value() / static_cast<double>(out.n_pairs);
  out.hist.lo = 0.0;
  out.hist.hi = out.max_rate_hz > 0.0 ? out.max_rate_hz * (1.0 + 1e-9) : 1.0;
  out.hist.counts.assign(64, 0);
  for (const double r : rates) out.hist.add(r);
  return out;
}

RateSummary network_rates(const Graph& g, PathMode mode, const RepeaterParams& params,
                          bool keep_pairs) {
  const Components comps = connected_components(g);
  return network_rates(g, comps, mode, params, keep_pairs);
}

}  // namespace qnet
