#include "qnet/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qnet/csvio.hpp"
#include "qnet/errors.hpp"
#include "qnet/netgen.hpp"
#include "qnet/version.hpp"

namespace qnet {

using nlohmann::json;

namespace {

constexpr uint64_t kNodeStreamTag = 0x6e6f6465;  // "node"
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

NetworkSample build_network(const RunConfig& config, const Region& region, int n,
                            int sample_index) {
  NetworkSample s;
  s.seed = rng::derive(config.base_seed, static_cast<uint64_t>(n),
                       static_cast<uint64_t>(sample_index));
  rng::Stream node_stream(rng::derive(s.seed, kNodeStreamTag));
  s.nodes = sample_nodes(region, n, node_stream);
  s.fiber = build_fiber_graph(s.nodes, config.net, s.seed);
  s.photonic = build_photonic_graph(s.fiber, config.net, s.seed);
  return s;
}

SampleResult analyze_sample(const RunConfig& config, const NetworkSample& sample) {
  SampleResult r;
  r.seed = sample.seed;
  r.n = sample.nodes.n();
  r.rho = sample.nodes.density;
  r.avg_l_hops = r.diameter_hops = r.avg_dist_hops_m = kNaN;
  r.avg_l_km_path = r.avg_dist_m = kNaN;
  r.rbar_hops_hz = r.rbar_km_hz = kNaN;

  const Graph& g = config.analysis_layer == AnalysisLayer::fiber ? sample.fiber
                                                                 : sample.photonic;
  const Components comps = connected_components(g);
  r.giant_size = comps.giant >= 0 ? comps.size[comps.giant] : 0;
  r.ng_over_n = comps.giant_fraction(g.num_nodes());
  r.avg_c = clustering_coefficient(g);
  r.degrees = degree_histogram(g, config.num_bins);

  if (r.giant_size >= 2) {
    if (config.mode_hops) {
      const PathStats st = shortest_paths_hops(g, comps);
      r.avg_l_hops = st.avg_path_hops;
      r.diameter_hops = st.diameter_hops;
      r.avg_dist_hops_m = st.avg_path_length_m;
      if (config.rates) {
        const RateSummary rs = network_rates(g, comps, PathMode::hops, config.repeater);
        r.rbar_hops_hz = rs.avg_rate_hz;
        r.rates_hops = rs.log_hist;
      }
    }
    if (config.mode_km) {
      const PathStats st = shortest_paths_km(g, comps);
      r.avg_l_km_path = st.avg_path_hops;
      r.avg_dist_m = st.avg_path_length_m;
      if (config.rates) {
        const RateSummary rs = network_rates(g, comps, PathMode::km, config.repeater);
        r.rbar_km_hz = rs.avg_rate_hz;
        r.rates_km = rs.log_hist;
      }
    }
  }
  return r;
}

SampleResult run_sample(const RunConfig& config, const Region& region, int n,
                        int sample_index) {
  return analyze_sample(config, build_network(config, region, n, sample_index));
}

namespace {

void take(std::vector<double>& xs, double v) {
  if (!std::isnan(v)) xs.push_back(v);
}

MetricStat finish(const std::vector<double>& values) {
  MetricStat s;
  s.n_valid = static_cast<int>(values.size());
  if (values.empty()) {
    s.mean = s.std_error = kNaN;
    return s;
  }
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
  }
  return s;
}

}  // namespace

std::vector<AggregateRow> aggregate(const std::vector<SampleResult>& results,
                                    const std::vector<int>& n_values) {
  std::vector<AggregateRow> rows;
  for (const int n : n_values) {
    AggregateRow row;
    row.n = n;
    std::vector<double> ng, c, lh, dh, dhm, lk, dkm, rh, rk;
    for (const SampleResult& r : results) {
      if (r.n != n) continue;
      ++row.samples;
      row.rho = r.rho;
      take(ng, r.ng_over_n);
      take(c, r.avg_c);
      take(lh, r.avg_l_hops);
      take(dh, r.diameter_hops);
      take(dhm, r.avg_dist_hops_m);
      take(lk, r.avg_l_km_path);
      take(dkm, r.avg_dist_m);
      take(rh, r.rbar_hops_hz);
      take(rk, r.rbar_km_hz);
    }
    row.ng_over_n = finish(ng);
    row.avg_c = finish(c);
    row.avg_l_hops = finish(lh);
    row.diameter_hops = finish(dh);
    row.avg_dist_hops_m = finish(dhm);
    row.avg_l_km_path = finish(lk);
    row.avg_dist_m = finish(dkm);
    row.rbar_hops_hz = finish(rh);
    row.rbar_km_hz = finish(rk);
    rows.push_back(row);
  }
  return rows;
}

std::string sample_csv_header() {
  return stats_header() +
         ",avg_l_km_path,avg_dist_hops_m,rbar_hops_hz,rbar_km_hz,giant_size";
}

std::string sample_csv_row(const SampleResult& r) {
  StatsRow pinned;
  pinned.seed = r.seed;
  pinned.n = r.n;
  pinned.rho = r.rho;
  pinned.ng_over_n = r.ng_over_n;
  pinned.avg_c = r.avg_c;
  pinned.avg_l_hops = r.avg_l_hops;
  pinned.diameter_hops = std::isnan(r.diameter_hops) ? -1
                                                     : static_cast<int>(r.diameter_hops);
  pinned.avg_dist_m = r.avg_dist_m;
  std::ostringstream out;
  out << stats_row(pinned) << ',' << format_double(r.avg_l_km_path) << ','
      << format_double(r.avg_dist_hops_m) << ',' << format_double(r.rbar_hops_hz)
      << ',' << format_double(r.rbar_km_hz) << ',' << r.giant_size;
  return out.str();
}

namespace {

json fit_power_rows(const std::vector<AggregateRow>& rows) {
  struct Quantity {
    const char* mode;
    const char* name;
    MetricStat AggregateRow::* member;
  };
  static constexpr Quantity kQuantities[] = {
      {"hops", "path_hops", &AggregateRow::avg_l_hops},
      {"hops", "path_length_m", &AggregateRow::avg_dist_hops_m},
      {"km", "path_hops", &AggregateRow::avg_l_km_path},
      {"km", "path_length_m", &AggregateRow::avg_dist_m},
  };
  json out = json::array();
  for (const Quantity& q : kQuantities) {
    std::vector<std::pair<double, double>> pts;
    for (const AggregateRow& row : rows) {
      const MetricStat& stat = row.*(q.member);
      if (stat.n_valid > 0 && stat.mean > 0.0) {
        pts.emplace_back(static_cast<double>(row.n), stat.mean);
      }
    }
    if (pts.size() < 2) continue;
    const PowerLawFit fit = fit_power_law(pts);
    out.push_back({{"mode", q.mode},
                   {"quantity", q.name},
                   {"exponent", fit.exponent},
                   {"prefactor", fit.prefactor},
                   {"r_squared", fit.r_squared},
                   {"n_points", fit.n_points}});
  }
  return out;
}

json peak_to_json(const GaussianPeak& g) {
  return {{"amplitude", g.amplitude}, {"mean", g.mean}, {"sigma", g.sigma}};
}

json degree_fit_rows(const std::vector<SampleResult>& samples,
                     const std::vector<int>& n_values, int num_bins) {
  json out = json::array();
  for (const int n : n_values) {
    std::vector<DegreeHistogram> parts;
    for (const SampleResult& r : samples) {
      if (r.n == n) parts.push_back(r.degrees);
    }
    if (parts.empty()) continue;
    const DegreeHistogram pooled = pool_degree_histograms(parts, num_bins);
    if (pooled.n_nodes == 0) continue;
    const PoissonFit pois = fit_poisson(pooled);
    const SingleGaussianFit single = fit_single_gaussian(pooled);
    const TwoGaussianFit two = fit_two_gaussian(pooled);
    out.push_back({{"N", n},
                   {"pooled_samples", parts.size()},
                   {"poisson",
                    {{"lambda", pois.lambda},
                     {"chi_square", pois.chi_square},
                     {"dof", pois.dof},
                     {"p_value", pois.p_value},
                     {"bins_used", pois.bins_used}}},
                   {"single_gaussian",
                    {{"peak", peak_to_json(single.g)},
                     {"residual", single.residual},
                     {"converged", single.converged},
                     {"iterations", single.iterations}}},
                   {"two_gaussian",
                    {{"g1", peak_to_json(two.g1)},
                     {"g2", peak_to_json(two.g2)},
                     {"residual", two.residual},
                     {"converged", two.converged},
                     {"iterations", two.iterations}}}});
  }
  return out;
}

json rate_hist_json(const std::vector<SampleResult>& samples, bool km) {
  RateLogHist pooled;
  int64_t contributing = 0;
  for (const SampleResult& r : samples) {
    const RateLogHist& h = km ? r.rates_km : r.rates_hops;
    int64_t mass = h.underflow + h.overflow;
    for (const int64_t c : h.counts) mass += c;
    if (mass == 0) continue;
    pooled.merge(h);
    ++contributing;
  }
  json bins = json::array();
  for (int b = 0; b < RateLogHist::kBins; ++b) {
    if (pooled.counts[b] == 0) continue;
    bins.push_back({{"lo_hz", RateLogHist::bin_lo_hz(b)},
                    {"hi_hz", RateLogHist::bin_lo_hz(b + 1)},
                    {"count", pooled.counts[b]}});
  }
  return {{"samples", contributing},
          {"underflow", pooled.underflow},
          {"overflow", pooled.overflow},
          {"bins", bins}};
}

}  // namespace

SweepResult run_sweep(const RunConfig& config, std::ostream* log) {
  config.validate();
  std::vector<Region> region_by_value;
  region_by_value.reserve(config.n_values.size());
  for (const int n : config.n_values) {
    region_by_value.push_back(region_for(config.region, n));
  }

  struct Job {
    int n;
    int value_index;
    int sample_index;
  };
  std::vector<Job> jobs;
  for (size_t vi = 0; vi < config.n_values.size(); ++vi) {
    for (int s = 0; s < config.samples; ++s) {
      jobs.push_back({config.n_values[vi], static_cast<int>(vi), s});
    }
  }

  SweepResult result;
  result.samples.resize(jobs.size());

  const int workers = std::min<int>(config.workers, static_cast<int>(jobs.size()));
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= jobs.size()) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        result.samples[idx] = run_sample(config, region_by_value[jobs[idx].value_index],
                                         jobs[idx].n, jobs[idx].sample_index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  result.rows = aggregate(result.samples, config.n_values);

  json fits;
  fits["path_scaling"] = fit_power_rows(result.rows);
  fits["degree_fits"] = degree_fit_rows(result.samples, config.n_values, config.num_bins);
  if (config.rates) {
    json hists;
    if (config.mode_hops) hists["hops"] = rate_hist_json(result.samples, false);
    if (config.mode_km) hists["km"] = rate_hist_json(result.samples, true);
    fits["rate_histogram_pooled"] = hists;
  }
  result.fits_json = fits.dump(2) + "\n";

  namespace fs = std::filesystem;
  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir / "samples");

  json manifest;
  manifest["tool"] = "qnet";
  manifest["version"] = kVersion;
  manifest["command"] = "sweep";
  manifest["config"] = json::parse(run_config_to_json(config));
  write_text_file((out_dir / "manifest.json").string(), manifest.dump(2) + "\n");

  for (const int n : config.n_values) {
    std::ostringstream csv;
    csv << sample_csv_header() << '\n';
    for (size_t idx = 0; idx < jobs.size(); ++idx) {
      if (jobs[idx].n != n) continue;
      csv << sample_csv_row(result.samples[idx]) << '\n';
    }
    std::ostringstream name;
    name << "N" << n << ".csv";
    write_text_file((out_dir / "samples" / name.str()).string(), csv.str());
  }

  std::ostringstream agg;
  agg << "N,rho,samples";
  static constexpr const char* kMetricNames[] = {
      "NG_over_N",      "avg_C",          "avg_l_hops",
      "diameter_hops",  "avg_dist_hops_m", "avg_l_km_path",
      "avg_dist_m",     "rbar_hops_hz",   "rbar_km_hz"};
  for (const char* m : kMetricNames) {
    agg << ',' << m << "_mean," << m << "_stderr," << m << "_nvalid";
  }
  agg << '\n';
  for (const AggregateRow& row : result.rows) {
    agg << row.n << ',' << format_double(row.rho) << ',' << row.samples;
    const MetricStat* stats[] = {&row.ng_over_n,      &row.avg_c,
                                 &row.avg_l_hops,     &row.diameter_hops,
                                 &row.avg_dist_hops_m, &row.avg_l_km_path,
                                 &row.avg_dist_m,     &row.rbar_hops_hz,
                                 &row.rbar_km_hz};
    for (const MetricStat* s : stats) {
      agg << ',' << format_double(s->mean) << ',' << format_double(s->std_error)
          << ',' << s->n_valid;
    }
    agg << '\n';
  }
  write_text_file((out_dir / "aggregate.csv").string(), agg.str());
  write_text_file((out_dir / "fits.json").string(), result.fits_json);

  if (log != nullptr) {
    for (const AggregateRow& row : result.rows) {
      *log << "N=" << row.n << " samples=" << row.samples
           << " NG/N=" << row.ng_over_n.mean << " <l>=" << row.avg_l_hops.mean
           << " diam=" << row.diameter_hops.mean << "\n";
    }
  }
  return result;
}

}  // namespace qnet
