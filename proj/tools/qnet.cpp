// qnet: generate fiber/photonic network samples, compute their statistics
// and repeater rates, run seeded ensembles, and self-check against slow
// reference implementations.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 runtime error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnet/config.hpp"
#include "qnet/csvio.hpp"
#include "qnet/ensemble.hpp"
#include "qnet/errors.hpp"
#include "qnet/fitting.hpp"
#include "qnet/graph.hpp"
#include "qnet/metrics.hpp"
#include "qnet/netgen.hpp"
#include "qnet/oracle.hpp"
#include "qnet/region.hpp"
#include "qnet/repeater.hpp"
#include "qnet/rng.hpp"
#include "qnet/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qnet;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> n;
  std::optional<uint64_t> seed;
  std::string mode;  // hops | km | both
  std::optional<int> samples;
  std::optional<int> workers;
  std::string out;
  std::string layer;  // photonic | fiber
};

void add_common_flags(CLI::App* cmd, Overrides* ov, bool with_sweep_flags) {
  cmd->add_option("--config", ov->config_path, "Run configuration JSON")
      ->required();
  cmd->add_option("--n", ov->n, "Override: single node count");
  cmd->add_option("--seed", ov->seed, "Override: base seed");
  cmd->add_option("--mode", ov->mode, "Override: hops, km or both")
      ->check(CLI::IsMember({"hops", "km", "both"}));
  cmd->add_option("--layer", ov->layer, "Override: analysis layer")
      ->check(CLI::IsMember({"photonic", "fiber"}));
  cmd->add_option("--out", ov->out, "Override: output directory");
  if (with_sweep_flags) {
    cmd->add_option("--samples", ov->samples, "Override: samples per N");
    cmd->add_option("--workers", ov->workers, "Override: worker threads");
  }
}

RunConfig resolve_config(const Overrides& ov) {
  RunConfig cfg = load_run_config(ov.config_path);
  if (ov.n) cfg.n_values = {*ov.n};
  if (ov.seed) cfg.base_seed = *ov.seed;
  if (!ov.mode.empty()) {
    cfg.mode_hops = ov.mode != "km";
    cfg.mode_km = ov.mode != "hops";
  }
  if (!ov.layer.empty()) cfg.analysis_layer = analysis_layer_from_string(ov.layer);
  if (ov.samples) cfg.samples = *ov.samples;
  if (ov.workers) cfg.workers = *ov.workers;
  if (!ov.out.empty()) cfg.out_dir = ov.out;
  cfg.validate();
  return cfg;
}

Region region_of(const RunConfig& cfg) {
  return region_for(cfg.region, cfg.n_values.front());
}

// ---------------------------------------------------------------- generate

int cmd_generate(const Overrides& ov) {
  const RunConfig cfg = resolve_config(ov);
  const Region region = region_of(cfg);
  const int n = cfg.n_values.front();
  const NetworkSample s = build_network(cfg, region, n, 0);

  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);
  write_nodes_csv((out / "nodes.csv").string(), s.nodes);
  write_edges_csv((out / "edges.csv").string(), s.fiber, s.photonic);

  std::cout << "generated N=" << n << " seed=" << s.seed
            << " fiber_edges=" << s.fiber.num_edges()
            << " photonic_edges=" << s.photonic.num_edges() << "\n"
            << "wrote " << (out / "nodes.csv").string() << ", "
            << (out / "edges.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------------- stats

int cmd_stats(const Overrides& ov, const std::string& nodes_path,
              const std::string& edges_path) {
  const RunConfig cfg = resolve_config(ov);
  if (nodes_path.empty() != edges_path.empty()) {
    throw ConfigError("stats: --nodes and --edges must be given together");
  }

  NodeSet nodes;
  Graph graph;
  uint64_t seed = 0;
  if (!nodes_path.empty()) {
    nodes = read_nodes_csv(nodes_path);
    const Region region = region_for(cfg.region, nodes.n());
    nodes.density = nodes.n() / region.total_area_km2;
    graph = read_edges_csv(edges_path, nodes.n(), to_string(cfg.analysis_layer));
  } else {
    const Region region = region_of(cfg);
    NetworkSample s = build_network(cfg, region, cfg.n_values.front(), 0);
    seed = s.seed;
    nodes = std::move(s.nodes);
    graph = cfg.analysis_layer == AnalysisLayer::fiber ? std::move(s.fiber)
                                                       : std::move(s.photonic);
  }

  const Components comps = connected_components(graph);
  StatsRow row;
  row.seed = seed;
  row.n = nodes.n();
  row.rho = nodes.density;
  row.ng_over_n = comps.giant_fraction(graph.num_nodes());
  row.avg_c = clustering_coefficient(graph);
  const int giant = comps.giant >= 0 ? comps.size[comps.giant] : 0;

  const DegreeHistogram degrees = degree_histogram(graph, cfg.num_bins);
  std::vector<int64_t> hop_hist;
  if (giant >= 2) {
    if (cfg.mode_hops) {
      const PathStats st = shortest_paths_hops(graph, comps);
      row.avg_l_hops = st.avg_path_hops;
      row.diameter_hops = static_cast<int>(st.diameter_hops);
      hop_hist = st.hop_histogram;
    }
    if (cfg.mode_km) {
      const PathStats st = shortest_paths_km(graph, comps);
      row.avg_dist_m = st.avg_path_length_m;
    }
  }

  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);
  write_text_file((out / "stats.csv").string(),
                  stats_header() + "\n" + stats_row(row) + "\n");
  write_degree_histogram_csv((out / "degree_hist.csv").string(), degrees);
  if (!hop_hist.empty()) {
    write_hop_histogram_csv((out / "hop_hist.csv").string(), hop_hist);
  }

  std::cout << stats_header() << "\n" << stats_row(row) << "\n"
            << "giant_size=" << giant << " mean_degree="
            << format_double(degrees.mean_degree) << "\n";
  return 0;
}

// ------------------------------------------------------------------- rates

json rate_summary_json(const RateSummary& rs, uint64_t seed, int n) {
  json hist = json::array();
  for (int b = 0; b < RateLogHist::kBins; ++b) {
    if (rs.log_hist.counts[b] == 0) continue;
    hist.push_back({{"lo_hz", RateLogHist::bin_lo_hz(b)},
                    {"hi_hz", RateLogHist::bin_lo_hz(b + 1)},
                    {"count", rs.log_hist.counts[b]}});
  }
  return {{"mode", to_string(rs.mode)},
          {"seed", seed},
          {"N", n},
          {"giant_size", rs.giant_size},
          {"n_pairs", rs.n_pairs},
          {"avg_rate_hz", rs.avg_rate_hz},
          {"max_rate_hz", rs.max_rate_hz},
          {"rate_log_hist", {{"underflow", rs.log_hist.underflow},
                             {"overflow", rs.log_hist.overflow},
                             {"bins", hist}}}};
}

int cmd_rates(const Overrides& ov) {
  const RunConfig cfg = resolve_config(ov);
  const Region region = region_of(cfg);
  const int n = cfg.n_values.front();
  const NetworkSample s = build_network(cfg, region, n, 0);
  const Graph& graph =
      cfg.analysis_layer == AnalysisLayer::fiber ? s.fiber : s.photonic;
  const Components comps = connected_components(graph);

  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);

  std::vector<PathMode> modes;
  if (cfg.mode_hops) modes.push_back(PathMode::hops);
  if (cfg.mode_km) modes.push_back(PathMode::km);
  for (const PathMode mode : modes) {
    const RateSummary rs = network_rates(graph, comps, mode, cfg.repeater, true);
    const std::string tag = to_string(mode);
    write_rates_csv((out / ("rates_" + tag + ".csv")).string(), rs, cfg.repeater);
    write_text_file((out / ("rates_" + tag + ".json")).string(),
                    rate_summary_json(rs, s.seed, n).dump(2) + "\n");
    std::cout << "mode=" << tag << " pairs=" << rs.n_pairs
              << " avg_rate_hz=" << format_double(rs.avg_rate_hz)
              << " max_rate_hz=" << format_double(rs.max_rate_hz) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- sweep

void write_figure_tables(const RunConfig& cfg, const SweepResult& res) {
  const fs::path out(cfg.out_dir);

  // fig2_degree: pooled degree densities per N.
  {
    std::ostringstream os;
    os << "N,bin_lo,bin_hi,density\n";
    for (const int n : cfg.n_values) {
      std::vector<DegreeHistogram> parts;
      for (const SampleResult& r : res.samples) {
        if (r.n == n) parts.push_back(r.degrees);
      }
      if (parts.empty()) continue;
      const DegreeHistogram pooled = pool_degree_histograms(parts, cfg.num_bins);
      for (const DegreeHistogram::Bin& b : pooled.bins) {
        os << n << ',' << format_double(b.lo) << ',' << format_double(b.hi)
           << ',' << format_double(b.density) << '\n';
      }
    }
    write_text_file((out / "fig2_degree.csv").string(), os.str());
  }

  // fig3_stats: connectivity and clustering vs N.
  {
    std::ostringstream os;
    os << "N,rho,samples,NG_over_N_mean,NG_over_N_stderr,avg_C_mean,avg_C_stderr\n";
    for (const AggregateRow& row : res.rows) {
      os << row.n << ',' << format_double(row.rho) << ',' << row.samples << ','
         << format_double(row.ng_over_n.mean) << ','
         << format_double(row.ng_over_n.std_error) << ','
         << format_double(row.avg_c.mean) << ','
         << format_double(row.avg_c.std_error) << '\n';
    }
    write_text_file((out / "fig3_stats.csv").string(), os.str());
  }

  // fig7_paths: mean path hop count / physical length / diameter vs N.
  {
    std::ostringstream os;
    os << "N,mode,avg_hops_mean,avg_hops_stderr,avg_dist_m_mean,"
          "avg_dist_m_stderr,diameter_hops_mean,diameter_hops_stderr\n";
    for (const AggregateRow& row : res.rows) {
      if (cfg.mode_hops) {
        os << row.n << ",hops," << format_double(row.avg_l_hops.mean) << ','
           << format_double(row.avg_l_hops.std_error) << ','
           << format_double(row.avg_dist_hops_m.mean) << ','
           << format_double(row.avg_dist_hops_m.std_error) << ','
           << format_double(row.diameter_hops.mean) << ','
           << format_double(row.diameter_hops.std_error) << '\n';
      }
      if (cfg.mode_km) {
        os << row.n << ",km," << format_double(row.avg_l_km_path.mean) << ','
           << format_double(row.avg_l_km_path.std_error) << ','
           << format_double(row.avg_dist_m.mean) << ','
           << format_double(row.avg_dist_m.std_error) << ",,\n";
      }
    }
    write_text_file((out / "fig7_paths.csv").string(), os.str());
  }

  // fig8_rates: mean pair rate vs N.
  if (cfg.rates) {
    std::ostringstream os;
    os << "N,mode,rbar_hz_mean,rbar_hz_stderr,n_valid\n";
    for (const AggregateRow& row : res.rows) {
      if (cfg.mode_hops) {
        os << row.n << ",hops," << format_double(row.rbar_hops_hz.mean) << ','
           << format_double(row.rbar_hops_hz.std_error) << ','
           << row.rbar_hops_hz.n_valid << '\n';
      }
      if (cfg.mode_km) {
        os << row.n << ",km," << format_double(row.rbar_km_hz.mean) << ','
           << format_double(row.rbar_km_hz.std_error) << ','
           << row.rbar_km_hz.n_valid << '\n';
      }
    }
    write_text_file((out / "fig8_rates.csv").string(), os.str());
  }

  // table1_fits: power-law exponents from the aggregate means.
  {
    const json fits = json::parse(res.fits_json);
    std::ostringstream os;
    os << "mode,quantity,exponent,prefactor,r_squared,n_points\n";
    for (const json& row : fits.at("path_scaling")) {
      os << row.at("mode").get<std::string>() << ','
         << row.at("quantity").get<std::string>() << ','
         << format_double(row.at("exponent").get<double>()) << ','
         << format_double(row.at("prefactor").get<double>()) << ','
         << format_double(row.at("r_squared").get<double>()) << ','
         << row.at("n_points").get<int>() << '\n';
    }
    write_text_file((out / "table1_fits.csv").string(), os.str());
  }
}

int cmd_sweep(const Overrides& ov) {
  const RunConfig cfg = resolve_config(ov);
  const SweepResult res = run_sweep(cfg, &std::cout);
  write_figure_tables(cfg, res);
  std::cout << "wrote " << cfg.out_dir << "/{manifest.json, samples/, "
            << "aggregate.csv, fits.json, fig*.csv, table1_fits.csv}\n";
  return 0;
}

// ------------------------------------------------------------------ verify

struct CheckReport {
  int failures = 0;

  void check(const std::string& name, double observed, double expected,
             double tol) {
    const bool ok = std::abs(observed - expected) <= tol;
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": observed "
              << format_double(observed) << " expected " << format_double(expected)
              << " tol " << format_double(tol) << "\n";
  }
};

Graph verify_fixture_graph() {
  // 8 nodes, hand-picked so hop-shortest and km-shortest routes disagree
  // and two components exist (one of size 6, one of size 2).
  std::vector<Edge> edges = {
      {0, 1, 4.0}, {1, 2, 5.0}, {0, 2, 12.0}, {2, 3, 2.0},
      {3, 4, 7.0}, {2, 4, 6.0}, {4, 5, 3.0},  {0, 5, 30.0},
      {6, 7, 1.0},
  };
  return Graph(8, edges);
}

int cmd_verify() {
  CheckReport rep;

  // Expected steps for a two-segment chain at P = 1/2 is 8/3.
  rep.check("z_steps m=2 P=0.5", z_steps(2, 0.5), 8.0 / 3.0, 1e-12);
  rep.check("z_steps_survival m=2 P=0.5", z_steps_survival(2, 0.5), 8.0 / 3.0,
            1e-9);
  rep.check("z_steps m=1 P=0.1", z_steps(1, 0.1), 10.0, 1e-9);

  double worst = 0.0;
  for (const int m : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64}) {
    for (const double p : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
      const double a = z_steps(m, p);
      const double b = z_steps_survival(m, p);
      worst = std::max(worst, std::abs(a - b) / b);
    }
  }
  rep.check("z_steps vs survival sum, worst relative over grid", worst, 0.0,
            1e-9);

  {
    rng::Stream stream(20240901);
    const ZSample mc = z_monte_carlo(4, 0.3, 200000, stream);
    rep.check("z_monte_carlo m=4 P=0.3 (tol 4 sigma)", mc.mean, z_steps(4, 0.3),
              4.0 * mc.std_error);
  }

  NetParams net;
  rep.check("waxman edge prob at d=226", waxman_edge_prob(226.0, net),
            0.36787944117144233, 1e-15);
  rep.check("photonic link prob at d=100", photonic_link_prob(100.0, net),
            0.9999568287525893, 1e-12);
  rep.check("photonic link prob at d=150", photonic_link_prob(150.0, net),
            0.6323045752290359, 1e-12);

  {
    const Graph g = verify_fixture_graph();
    const oracle::PairSummary ref = oracle::pair_summary(g);
    const Components comps = connected_components(g);
    const PathStats hops = shortest_paths_hops(g, comps);
    const PathStats km = shortest_paths_km(g, comps);
    rep.check("fixture giant size", comps.size[comps.giant], ref.giant_size, 0);
    rep.check("fixture avg hops vs brute force", hops.avg_path_hops,
              ref.avg_hops, 1e-12);
    rep.check("fixture hop diameter vs brute force", hops.diameter_hops,
              ref.diameter_hops, 0);
    rep.check("fixture avg km distance vs brute force",
              km.avg_path_length_m / 1000.0, ref.avg_km_dist, 1e-9);
    rep.check("fixture clustering vs brute force", clustering_coefficient(g),
              oracle::clustering(g), 1e-12);
  }

  {
    // Route dichotomy fixture: fewest segments vs shortest physical route.
    RepeaterParams params;
    PathResult hops_path;
    hops_path.mode = PathMode::hops;
    hops_path.m = 2;
    hops_path.length_km = 60.0;
    PathResult km_path;
    km_path.mode = PathMode::km;
    km_path.m = 3;
    km_path.length_km = 30.0;
    rep.check("rate of 2-segment 60 km chain (Hz)",
              mean_time_and_rate(hops_path, params).rate_hz, 586.2662248714607,
              1e-6);
    rep.check("rate of 3-segment 30 km chain (Hz)",
              mean_time_and_rate(km_path, params).rate_hz, 4283.381101062883,
              1e-6);
  }

  std::cout << (rep.failures == 0 ? "verify: all checks passed\n"
                                  : "verify: FAILURES\n");
  return rep.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical-fiber quantum network simulator"};
  app.set_version_flag("--version", std::string("qnet ") + kVersion);
  app.require_subcommand(1);

  Overrides gen_ov, stats_ov, rates_ov, sweep_ov;
  std::string stats_nodes, stats_edges;

  CLI::App* generate =
      app.add_subcommand("generate", "Write node/edge tables for one sample");
  add_common_flags(generate, &gen_ov, false);

  CLI::App* stats =
      app.add_subcommand("stats", "Network statistics for one sample");
  add_common_flags(stats, &stats_ov, false);
  stats->add_option("--nodes", stats_nodes, "Read nodes from a saved CSV");
  stats->add_option("--edges", stats_edges, "Read edges from a saved CSV");

  CLI::App* rates =
      app.add_subcommand("rates", "Repeater rates for every giant-cluster pair");
  add_common_flags(rates, &rates_ov, false);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Seeded ensemble over n_values x samples");
  add_common_flags(sweep, &sweep_ov, true);

  CLI::App* verify =
      app.add_subcommand("verify", "Self-checks against reference evaluators");
  (void)verify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_ov);
    if (stats->parsed()) return cmd_stats(stats_ov, stats_nodes, stats_edges);
    if (rates->parsed()) return cmd_rates(rates_ov);
    if (sweep->parsed()) return cmd_sweep(sweep_ov);
    if (verify->parsed()) return cmd_verify();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
