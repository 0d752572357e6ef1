#include <benchmark/benchmark.h>

#include "treefactor/fixtures.hpp"
#include "treefactor/winding.hpp"

using namespace treefactor;

namespace {

void BM_winding_field(benchmark::State& state) {
  const double cell = 1.0 / static_cast<double>(state.range(0));
  const SampledCurve curve = fixtures::circle(512);
  for (auto _ : state) {
    const WindingField f = winding_field(curve, cell);
    benchmark::DoNotOptimize(f.values.data());
  }
}

void BM_winding_moments(benchmark::State& state) {
  const WindingField f = winding_field(fixtures::circle(512), 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(winding_moments(f).m00);
}

}  // namespace

BENCHMARK(BM_winding_field)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_winding_moments);
