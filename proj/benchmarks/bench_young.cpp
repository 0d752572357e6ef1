#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "treefactor/young.hpp"

using namespace treefactor;

namespace {

SampledFunction wave(int n, double freq) {
  SampledFunction f;
  f.times.reserve(n + 1);
  f.values.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = 2.0 * std::numbers::pi * double(i) / n;
    f.times.push_back(t);
    f.values.push_back(std::sin(freq * t) + 0.3 * std::cos(3.0 * freq * t));
  }
  return f;
}

void BM_young_integral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SampledFunction f = wave(n, 1.0);
  const SampledFunction g = wave(n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(young_integral(f, g, 0.0).value);
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(BM_young_integral)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);
