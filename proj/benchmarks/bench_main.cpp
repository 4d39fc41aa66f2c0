#include <benchmark/benchmark.h>

#include <cmath>

#include "olsrsim/path_compute.hpp"
#include "olsrsim/scenario.hpp"
#include "olsrsim/sim_engine.hpp"

namespace {

using namespace olsrsim;

// Random geometric graph with the default radio model, `n` nodes at the
// reference density.
LinkGraph geometric_graph(std::size_t n, MetricKind kind) {
  RngStream rng(n, StreamRole::Topology);
  const double side = 1000.0 * std::sqrt(static_cast<double>(n) / 50.0);
  const auto pos = place_nodes(n, side, rng);
  LinkGraph g(n, kind);
  const LossModel model;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const double p = link_success_probability(pos[a], pos[b], model);
      if (p > 0.0) {
        g.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b),
                   {p, p, 1.0 + 5.0 * rng.uniform()});
      }
    }
  }
  return g;
}

void BM_ComputePaths(benchmark::State& state, MetricKind kind) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LinkGraph g = geometric_graph(n, kind);
  OpCounter total;
  for (auto _ : state) {
    OpCounter ctr;
    benchmark::DoNotOptimize(compute_paths(kind, g, 0, ctr));
    total += ctr;
  }
  const double iters = static_cast<double>(state.iterations());
  state.counters["weighted_ops"] = total.weighted_cost() / iters;
  state.counters["edges"] = static_cast<double>(g.edge_count());
}

BENCHMARK_CAPTURE(BM_ComputePaths, ETX, MetricKind::Etx)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(BM_ComputePaths, INVETX, MetricKind::InvEtx)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(BM_ComputePaths, ML, MetricKind::Ml)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(BM_ComputePaths, MD, MetricKind::Md)->RangeMultiplier(2)->Range(16, 256);

void BM_EventQueue(benchmark::State& state) {
  const auto batch = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Simulator sim;
    RngStream rng(1, StreamRole::Jitter);
    int fired = 0;
    for (int i = 0; i < batch; ++i) {
      sim.schedule(SimTime(rng.uniform() * 100.0), EventKind::StatsSample, [&] { ++fired; });
    }
    sim.run_until(SimTime(100.0));
    benchmark::DoNotOptimize(fired);
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_EventQueue)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_ReferenceRun(benchmark::State& state) {
  RunConfig cfg;
  cfg.duration_s = 120.0;
  cfg.rate_pps = 8.0;
  cfg.metric = static_cast<MetricKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_single(cfg));
  state.SetLabel(std::string(to_string(cfg.metric)));
}
BENCHMARK(BM_ReferenceRun)
    ->DenseRange(static_cast<int>(MetricKind::Etx), static_cast<int>(MetricKind::Md))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
