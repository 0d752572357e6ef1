#include <benchmark/benchmark.h>

#include <cmath>

#include "treefactor/dyadic_surface.hpp"
#include "treefactor/fixtures.hpp"

using namespace treefactor;

namespace {

void BM_circulation_tree(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const SquareField f = fixtures::weierstrass(0.6, depth, 42);
  for (auto _ : state) {
    const DyadicCirculations tree(f.phi1, f.phi2);
    benchmark::DoNotOptimize(tree.value(0, 0, 0));
  }
  state.SetItemsProcessed(state.iterations() * (1 << depth) * (1 << depth));
}

void BM_second_order_sums(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const SquareField f = fixtures::weierstrass(0.6, depth, 42);
  const auto fg = [](Vec2 q) { return std::exp(-0.5 * (q.x * q.x + q.y * q.y)); };
  const auto dg = [](Vec2 q) {
    const double e = std::exp(-0.5 * (q.x * q.x + q.y * q.y));
    return Vec2{-q.x * e, -q.y * e};
  };
  for (auto _ : state)
    benchmark::DoNotOptimize(surface_integral_second_order(f, fg, dg).values.back());
}

void BM_square_data(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const SquareField f = fixtures::weierstrass(0.6, depth, 42);
  const int level = depth - 2;
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_square_data(f, level).size());
}

}  // namespace

BENCHMARK(BM_circulation_tree)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_second_order_sums)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_square_data)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
