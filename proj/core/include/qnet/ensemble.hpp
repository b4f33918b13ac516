#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qnet/config.hpp"
#include "qnet/fitting.hpp"
#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/region.hpp"
#include "qnet/repeater.hpp"

namespace qnet {

// Everything generated for one (config, n, sample_index) draw.
struct NetworkSample {
  uint64_t seed = 0;
  NodeSet nodes;
  Graph fiber;
  Graph photonic;
};

// Seed derivation: derive(base_seed, n, sample_index). Node placement uses
// a stream seeded with derive(seed, "node"); edge draws are keyed per pair
// inside netgen.
NetworkSample build_network(const RunConfig& config, const Region& region, int n,
                            int sample_index);

// Per-sample analysis record. Path/rate fields are NaN when the relevant
// mode is disabled or the giant cluster is too small to define them.
struct SampleResult {
  uint64_t seed = 0;
  int n = 0;
  double rho = 0.0;
  double ng_over_n = 0.0;
  double avg_c = 0.0;
  int giant_size = 0;

  double avg_l_hops = 0.0;        // hop mode: mean hop count
  double diameter_hops = 0.0;     // hop mode: max hop count
  double avg_dist_hops_m = 0.0;   // hop mode: mean physical length
  double avg_l_km_path = 0.0;     // km mode: mean hop count of km paths
  double avg_dist_m = 0.0;        // km mode: mean physical length
  double rbar_hops_hz = 0.0;
  double rbar_km_hz = 0.0;

  DegreeHistogram degrees;        // analysis layer
  RateLogHist rates_hops;
  RateLogHist rates_km;
};

SampleResult analyze_sample(const RunConfig& config, const NetworkSample& sample);
SampleResult run_sample(const RunConfig& config, const Region& region, int n,
                        int sample_index);

struct MetricStat {
  double mean = 0.0;
  double std_error = 0.0;
  int n_valid = 0;
};

struct AggregateRow {
  int n = 0;
  double rho = 0.0;
  int samples = 0;
  MetricStat ng_over_n, avg_c;
  MetricStat avg_l_hops, diameter_hops, avg_dist_hops_m;
  MetricStat avg_l_km_path, avg_dist_m;
  MetricStat rbar_hops_hz, rbar_km_hz;
};

// NaN-aware mean/stderr per N, in n_values order.
std::vector<AggregateRow> aggregate(const std::vector<SampleResult>& results,
                                    const std::vector<int>& n_values);

struct SweepResult {
  std::vector<SampleResult> samples;       // grouped by n, sample order
  std::vector<AggregateRow> rows;
  std::string fits_json;
};

// Runs the whole ensemble with config.workers threads and writes
// manifest.json, samples/N*.csv, aggregate.csv and fits.json under
// config.out_dir. Results are keyed by (n, sample_index) only, so output
// bytes do not depend on the worker count. log may be null.
SweepResult run_sweep(const RunConfig& config, std::ostream* log);

// Row with the extended per-sample columns (pinned stats columns first).
std::string sample_csv_header();
std::string sample_csv_row(const SampleResult& r);

}  // namespace qnet
