#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "shiftcg/delay_monoid.hpp"

namespace {

using shiftcg::SElement;

std::vector<SElement> sample(std::size_t n) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> t(300, 1300), c(0, 5);
  std::vector<SElement> out;
  for (std::size_t i = 0; i < n; ++i) {
    const int dt_c = c(rng) + 1;
    const int dt_t = t(rng);
    out.push_back(SElement::triple(t(rng), dt_c - 1, dt_t + 10, dt_c, dt_t));
  }
  return out;
}

void BM_SPlus(benchmark::State& state) {
  const auto xs = sample(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftcg::s_plus(xs[i & 1023], xs[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_SPlus);

void BM_SMeet(benchmark::State& state) {
  const auto xs = sample(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shiftcg::s_meet(xs[i & 1023], xs[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_SMeet);

void BM_ResourcePlus(benchmark::State& state) {
  const auto xs = sample(2 * static_cast<std::size_t>(state.range(0)));
  shiftcg::Resource a, b;
  a.per_scenario.assign(xs.begin(), xs.begin() + state.range(0));
  b.per_scenario.assign(xs.begin() + state.range(0), xs.end());
  for (auto _ : state) benchmark::DoNotOptimize(shiftcg::resource_plus(a, b));
}
BENCHMARK(BM_ResourcePlus)->Arg(20)->Arg(50)->Arg(200);

}  // namespace
