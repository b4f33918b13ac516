#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnet/config.hpp"
#include "qnet/ensemble.hpp"
#include "qnet/rng.hpp"

using namespace qnet;
namespace fs = std::filesystem;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.region.kind = RegionKind::disk;
  cfg.region.radius_km = 150.0;
  cfg.n_values = {40};
  cfg.samples = 3;
  cfg.base_seed = 99;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (const char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("build_network derives seeds and replays exactly") {
  const RunConfig cfg = small_config();
  const Region region = region_for(cfg.region, 40);

  const NetworkSample a = build_network(cfg, region, 40, 2);
  const NetworkSample b = build_network(cfg, region, 40, 2);

  CHECK(a.seed == rng::derive(cfg.base_seed, 40, 2));
  CHECK(a.seed == b.seed);
  REQUIRE(a.nodes.n() == 40);
  REQUIRE(b.nodes.n() == 40);
  for (int i = 0; i < 40; ++i) {
    CHECK(a.nodes.pos[i].x == b.nodes.pos[i].x);
    CHECK(a.nodes.pos[i].y == b.nodes.pos[i].y);
  }
  REQUIRE(a.fiber.num_edges() == b.fiber.num_edges());
  for (size_t i = 0; i < a.fiber.num_edges(); ++i) {
    CHECK(a.fiber.edges()[i].u == b.fiber.edges()[i].u);
    CHECK(a.fiber.edges()[i].v == b.fiber.edges()[i].v);
    CHECK(a.fiber.edges()[i].length_km == b.fiber.edges()[i].length_km);
  }
  CHECK(a.photonic.num_edges() == b.photonic.num_edges());
  CHECK(a.photonic.num_edges() <= a.fiber.num_edges());

  const NetworkSample c = build_network(cfg, region, 40, 3);
  CHECK(c.seed != a.seed);
  CHECK(c.nodes.pos[0].x != a.nodes.pos[0].x);
}

TEST_CASE("analyze_sample fills stats on a dense photonic disk") {
  const RunConfig cfg = small_config();
  const Region region = region_for(cfg.region, 40);
  const SampleResult r = run_sample(cfg, region, 40, 0);

  CHECK(r.n == 40);
  CHECK(r.seed == rng::derive(cfg.base_seed, 40, 0));
  CHECK(r.rho ==
        doctest::Approx(40.0 / (std::numbers::pi * 150.0 * 150.0)).epsilon(1e-12));
  REQUIRE(r.giant_size >= 2);
  CHECK(r.ng_over_n == doctest::Approx(r.giant_size / 40.0).epsilon(1e-12));
  CHECK(r.avg_c >= 0.0);
  CHECK(r.avg_l_hops >= 1.0);
  CHECK(r.diameter_hops >= r.avg_l_hops);
  CHECK(r.avg_dist_hops_m > 0.0);
  CHECK(r.avg_l_km_path >= r.avg_l_hops);  // km paths use at least as many hops
  CHECK(r.avg_dist_m <= r.avg_dist_hops_m);  // and are at most as long
  CHECK(r.rbar_hops_hz > 0.0);
  CHECK(r.rbar_km_hz >= r.rbar_hops_hz);
  CHECK(r.degrees.n_nodes == 40);
}

TEST_CASE("analyze_sample NaN-fills disabled modes") {
  RunConfig cfg = small_config();
  cfg.mode_km = false;
  const Region region = region_for(cfg.region, 40);
  const SampleResult r = run_sample(cfg, region, 40, 0);
  CHECK(std::isnan(r.avg_l_km_path));
  CHECK(std::isnan(r.avg_dist_m));
  CHECK(std::isnan(r.rbar_km_hz));
  CHECK(!std::isnan(r.avg_l_hops));

  RunConfig no_rates = small_config();
  no_rates.rates = false;
  const SampleResult r2 = run_sample(no_rates, region, 40, 0);
  CHECK(std::isnan(r2.rbar_hops_hz));
  CHECK(std::isnan(r2.rbar_km_hz));
  CHECK(!std::isnan(r2.avg_l_hops));
}

TEST_CASE("analyze_sample NaN-fills path stats without a giant cluster") {
  RunConfig cfg = small_config();
  cfg.region.radius_km = 1.0e5;  // nodes far beyond any plausible link
  cfg.n_values = {2};
  const Region region = region_for(cfg.region, 2);
  const SampleResult r = run_sample(cfg, region, 2, 0);
  CHECK(r.giant_size == 1);
  CHECK(std::isnan(r.avg_l_hops));
  CHECK(std::isnan(r.diameter_hops));
  CHECK(std::isnan(r.avg_dist_hops_m));
  CHECK(std::isnan(r.avg_l_km_path));
  CHECK(std::isnan(r.rbar_hops_hz));
  CHECK(std::isnan(r.rbar_km_hz));
  CHECK(r.ng_over_n == 0.5);
}

TEST_CASE("aggregate is NaN aware") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SampleResult> rs(3);
  for (int i = 0; i < 3; ++i) {
    rs[i].n = 100;
    rs[i].rho = 0.25;
    rs[i].avg_c = 1.0 + i;  // 1, 2, 3
  }
  rs[0].avg_l_hops = 2.0;
  rs[1].avg_l_hops = nan;
  rs[2].avg_l_hops = 4.0;
  for (SampleResult& r : rs) {
    r.rbar_hops_hz = nan;
    r.rbar_km_hz = nan;
  }

  const std::vector<AggregateRow> rows = aggregate(rs, {100, 999});
  REQUIRE(rows.size() == 2);
  const AggregateRow& row = rows[0];
  CHECK(row.n == 100);
  CHECK(row.samples == 3);
  CHECK(row.rho == 0.25);

  CHECK(row.avg_c.n_valid == 3);
  CHECK(row.avg_c.mean == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(row.avg_c.std_error ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));

  CHECK(row.avg_l_hops.n_valid == 2);
  CHECK(row.avg_l_hops.mean == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(row.avg_l_hops.std_error == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(row.rbar_hops_hz.n_valid == 0);
  CHECK(std::isnan(row.rbar_hops_hz.mean));
  CHECK(std::isnan(row.rbar_hops_hz.std_error));

  CHECK(rows[1].n == 999);
  CHECK(rows[1].samples == 0);
  CHECK(std::isnan(rows[1].avg_c.mean));
}

TEST_CASE("sample csv layout") {
  CHECK(sample_csv_header() ==
        "seed,N,rho,NG_over_N,avg_C,avg_l_hops,diameter_hops,avg_dist_m,"
        "avg_l_km_path,avg_dist_hops_m,rbar_hops_hz,rbar_km_hz,giant_size");

  SampleResult r;
  r.seed = 42;
  r.n = 7;
  r.rho = 0.5;
  r.ng_over_n = 1.0;
  r.avg_c = 0.25;
  r.avg_l_hops = 1.5;
  r.diameter_hops = std::numeric_limits<double>::quiet_NaN();
  r.giant_size = 7;
  const std::string row = sample_csv_row(r);

  std::vector<std::string> fields;
  std::stringstream ss(row);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  REQUIRE(fields.size() == 13);
  CHECK(fields[0] == "42");
  CHECK(fields[1] == "7");
  CHECK(fields[6] == "-1");  // NaN diameter sentinel
  CHECK(fields[12] == "7");
}

TEST_CASE("run_sweep writes deterministic outputs for any worker count") {
  RunConfig cfg = small_config();
  cfg.n_values = {30, 45};
  cfg.samples = 3;

  const fs::path out1 = fs::temp_directory_path() / "qnet_sweep_w1";
  const fs::path out2 = fs::temp_directory_path() / "qnet_sweep_w4";
  fs::remove_all(out1);
  fs::remove_all(out2);

  cfg.out_dir = out1.string();
  cfg.workers = 1;
  const SweepResult res1 = run_sweep(cfg, nullptr);

  cfg.out_dir = out2.string();
  cfg.workers = 4;
  std::ostringstream log;
  const SweepResult res2 = run_sweep(cfg, &log);

  REQUIRE(res1.samples.size() == 6);
  CHECK(res1.samples[0].n == 30);
  CHECK(res1.samples[3].n == 45);
  for (int s = 0; s < 3; ++s) {
    CHECK(res1.samples[s].seed == rng::derive(cfg.base_seed, 30, s));
    CHECK(res1.samples[3 + s].seed == rng::derive(cfg.base_seed, 45, s));
  }
  REQUIRE(res1.rows.size() == 2);
  CHECK(res1.rows[0].n == 30);
  CHECK(res1.rows[0].samples == 3);
  CHECK(res1.rows[1].n == 45);
  CHECK(!log.str().empty());

  for (const char* name : {"manifest.json", "aggregate.csv", "fits.json"}) {
    CHECK(fs::exists(out1 / name));
  }
  CHECK(fs::exists(out1 / "samples" / "N30.csv"));
  CHECK(fs::exists(out1 / "samples" / "N45.csv"));

  // identical bytes apart from the differing out_dir echoed in the manifest
  CHECK(slurp(out1 / "samples" / "N30.csv") == slurp(out2 / "samples" / "N30.csv"));
  CHECK(slurp(out1 / "samples" / "N45.csv") == slurp(out2 / "samples" / "N45.csv"));
  CHECK(slurp(out1 / "aggregate.csv") == slurp(out2 / "aggregate.csv"));
  CHECK(slurp(out1 / "fits.json") == slurp(out2 / "fits.json"));

  const std::string n30 = slurp(out1 / "samples" / "N30.csv");
  CHECK(count_lines(n30) == 4);  // header + 3 samples
  CHECK(n30.rfind(sample_csv_header() + "\n", 0) == 0);

  const std::string agg = slurp(out1 / "aggregate.csv");
  CHECK(count_lines(agg) == 3);
  CHECK(agg.find("avg_l_hops_mean") != std::string::npos);

  const nlohmann::json manifest = nlohmann::json::parse(slurp(out1 / "manifest.json"));
  CHECK(manifest["tool"] == "qnet");
  CHECK(manifest["command"] == "sweep");
  CHECK(manifest["config"].contains("n_values"));
  CHECK(!manifest["config"].contains("workers"));

  const nlohmann::json fits = nlohmann::json::parse(slurp(out1 / "fits.json"));
  CHECK(fits.contains("path_scaling"));
  CHECK(fits.contains("degree_fits"));
  CHECK(fits.contains("rate_histogram_pooled"));
  CHECK(fits["degree_fits"].size() == 2);

  fs::remove_all(out1);
  fs::remove_all(out2);
}

}  // TEST_SUITE
