#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/rng.hpp"

namespace qnet {

// Path selection metric for repeater chains.
enum class PathMode { hops, km };

const char* to_string(PathMode mode);
PathMode path_mode_from_string(const std::string& s);  // throws ConfigError

struct RepeaterParams {
  double gamma_db_per_km = 0.2;
  double signal_speed_m_per_s = 2.0e8;  // light in fiber
};

struct PathResult {
  int32_t u = -1, v = -1;
  PathMode mode = PathMode::hops;
  int m = 0;                    // number of segments
  double length_km = 0.0;       // total physical length
  std::vector<int32_t> nodes;   // u ... v inclusive
};

// Selected route between u and v: min-hop (lexicographically smallest on
// ties) or km-shortest. Throws DataError when u == v or no path exists.
PathResult select_path(const Graph& g, int u, int v, PathMode mode);

// p0 = 10^(-gamma * L0 / 10) for one segment of length L0.
double segment_success_prob(double segment_km, double gamma_db_per_km);

// Z_m(P) = E[max of m iid geometric(P)] = expected clock steps until every
// segment of an m-segment chain has succeeded at least once.
//
// Three evaluation regimes, all agreeing to better than 1e-9 relative:
//  - inclusion-exclusion sum over j <= m with compensated summation
//    (m <= 30, while the cancellation error stays under 1e-9 * |Z|),
//  - survival sum over time steps with an exact binomial tail, and
//  - for m * (-ln(1-P)) <= 1/4 the Euler-Maclaurin form H_m / x + 1/2,
//    whose first omitted correction is O(x^m) by the alternating-sum
//    identities, needed because the survival sum takes ~7/P iterations.
// Throws std::domain_error unless m >= 1 and 0 < P <= 1.
double z_steps(int m, double p);

// The two explicit forms, exposed for cross-checks. The survival form is
// the literal truncated series sum_{t>=0} [1 - (1 - (1-P)^t)^m] cut when
// the geometric tail bound m (1-P)^t / P drops below 1e-12.
double z_steps_binomial(int m, double p, double* error_estimate = nullptr);
double z_steps_survival(int m, double p);

struct ZSample {
  double mean = 0.0;
  double std_error = 0.0;
};

// Direct simulation of the max of m geometric variables, for validation.
ZSample z_monte_carlo(int m, double p, int64_t trials, rng::Stream& stream);

struct RateResult {
  double p0 = 0.0;          // per-segment success probability
  double t0_s = 0.0;        // segment round-trip time 2 L0 / c
  double z = 0.0;           // expected clock steps
  double mean_time_s = 0.0; // t0 * z
  double rate_hz = 0.0;     // 1 / mean_time
};

// Repetition rate of a repeater chain along the selected path: the path is
// split into m equal segments of L/m. Underflowing p0 yields rate 0.
RateResult mean_time_and_rate(const PathResult& path, const RepeaterParams& params);

struct PairRate {
  int32_t u = 0, v = 0;
  int m = 0;
  double length_km = 0.0;
  double rate_hz = 0.0;
};

// Fixed log-spaced bins for pooling pair rates across an ensemble without
// a second pass: 12 bins per decade over [1e-12, 1e6) Hz.
struct RateLogHist {
  static constexpr int kBinsPerDecade = 12;
  static constexpr int kDecadeLo = -12;
  static constexpr int kDecadeHi = 6;
  static constexpr int kBins = (kDecadeHi - kDecadeLo) * kBinsPerDecade;

  std::vector<int64_t> counts = std::vector<int64_t>(kBins, 0);
  int64_t underflow = 0;  // includes rate == 0
  int64_t overflow = 0;

  void add(double rate_hz);
  void merge(const RateLogHist& other);
  static double bin_lo_hz(int b);
};

struct RateSummary {
  PathMode mode = PathMode::hops;
  int giant_size = 0;
  int64_t n_pairs = 0;
  double avg_rate_hz = 0.0;  // 2/(n(n-1)) * sum over giant pairs
  double max_rate_hz = 0.0;
  Histogram hist;            // linear bins over [0, max)
  RateLogHist log_hist;      // fixed bins, safe to pool across samples
  std::vector<PairRate> pairs;  // filled only when keep_pairs
};

// Rates for every unordered pair of the giant cluster. Throws DataError if
// the giant cluster has fewer than 2 nodes.
RateSummary network_rates(const Graph& g, const Components& comps, PathMode mode,
                          const RepeaterParams& params, bool keep_pairs = false);
RateSummary network_rates(const Graph& g, PathMode mode, const RepeaterParams& params,
                          bool keep_pairs = false);

}  // namespace qnet
