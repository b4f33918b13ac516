#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qnet/config.hpp"
#include "qnet/ensemble.hpp"
#include "qnet/metrics.hpp"
#include "qnet/netgen.hpp"
#include "qnet/region.hpp"
#include "qnet/repeater.hpp"
#include "qnet/rng.hpp"

using namespace qnet;

namespace {

// Constant-density disk matching the large sweep workload.
Region sweep_region(int n, double rho) {
  return make_disk_region(std::sqrt(n / (std::numbers::pi * rho)));
}

NodeSet sweep_nodes(int n, double rho, uint64_t seed) {
  const Region region = sweep_region(n, rho);
  rng::Stream stream(seed);
  return sample_nodes(region, n, stream);
}

}  // namespace

static void BM_SampleNodes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Region region = sweep_region(n, 1e-5);
  for (auto _ : state) {
    rng::Stream stream(42);
    benchmark::DoNotOptimize(sample_nodes(region, n, stream));
  }
}
BENCHMARK(BM_SampleNodes)->Arg(500)->Arg(2000);

static void BM_FiberGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NodeSet nodes = sweep_nodes(n, 1e-5, 7);
  const NetParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_fiber_graph(nodes, params, 42));
  }
}
BENCHMARK(BM_FiberGraph)->Arg(500)->Arg(1000)->Arg(2000);

static void BM_PhotonicOverlay(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NodeSet nodes = sweep_nodes(n, 1e-5, 7);
  const NetParams params;
  const Graph fiber = build_fiber_graph(nodes, params, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_photonic_graph(fiber, params, 42));
  }
}
BENCHMARK(BM_PhotonicOverlay)->Arg(1000);

static void BM_PathStatsHops(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NodeSet nodes = sweep_nodes(n, 1e-5, 7);
  const Graph fiber = build_fiber_graph(nodes, NetParams{}, 42);
  const Components comps = connected_components(fiber);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_paths_hops(fiber, comps));
  }
}
BENCHMARK(BM_PathStatsHops)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_PathStatsKm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NodeSet nodes = sweep_nodes(n, 1e-5, 7);
  const Graph fiber = build_fiber_graph(nodes, NetParams{}, 42);
  const Components comps = connected_components(fiber);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_paths_km(fiber, comps));
  }
}
BENCHMARK(BM_PathStatsKm)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_ZStepsGrid(benchmark::State& state) {
  const double ps[] = {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  for (auto _ : state) {
    double acc = 0.0;
    for (int m = 1; m <= 64; ++m) {
      for (const double p : ps) acc += z_steps(m, p);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ZStepsGrid);

static void BM_NetworkRates(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NodeSet nodes = sweep_nodes(n, 5e-5, 7);
  const NetParams params;
  const Graph fiber = build_fiber_graph(nodes, params, 42);
  const Graph photonic = build_photonic_graph(fiber, params, 42);
  const Components comps = connected_components(photonic);
  const RepeaterParams rep;
  for (auto _ : state) {
    benchmark::DoNotOptimize(network_rates(photonic, comps, PathMode::km, rep));
  }
}
BENCHMARK(BM_NetworkRates)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_RunSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RunConfig cfg;
  cfg.region.kind = RegionKind::disk;
  cfg.region.rho_per_km2 = 1e-5;
  cfg.n_values = {n};
  cfg.analysis_layer = AnalysisLayer::fiber;
  cfg.rates = false;
  const Region region = region_for(cfg.region, n);
  int sample = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sample(cfg, region, n, sample++));
  }
}
BENCHMARK(BM_RunSample)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
