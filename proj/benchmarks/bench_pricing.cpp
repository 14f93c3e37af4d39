#include <vector>

#include <benchmark/benchmark.h>

#include "shiftcg/pricing.hpp"
#include "shiftcg_cli/generator.hpp"

namespace {

using namespace shiftcg;

struct Fixture {
  Instance instance;
  Digraph digraph;
  ArcResources arcres;
  BoundSet bounds;
};

Fixture make(std::size_t jobs, std::size_t scenarios) {
  cli::GeneratorOptions params;
  params.n_jobs = jobs;
  params.n_scenarios = scenarios;
  params.seed = 11;
  Fixture f{cli::generate_instance(params), {}, {}, {}};
  f.digraph = build_digraph(f.instance);
  // Uniform duals that make long shifts attractive.
  const std::vector<double> duals(jobs, 150.0);
  f.arcres = build_arc_resources(f.digraph, f.instance, duals);
  f.bounds = compute_bounds(f.digraph, f.arcres);
  return f;
}

void BM_Bounds(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_bounds(f.digraph, f.arcres));
}
BENCHMARK(BM_Bounds)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EnumerateMin(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), 20);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        enumerate_min(f.digraph, f.arcres, f.bounds, f.instance.cbu()));
}
BENCHMARK(BM_EnumerateMin)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
