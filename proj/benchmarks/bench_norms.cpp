#include <benchmark/benchmark.h>

#include "dkg/fields.hpp"
#include "dkg/nullform.hpp"
#include "dkg/spectral_field.hpp"

using namespace dkg;

static void BM_SobolevNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid g(64.0, n);
  auto f = random_complex_field(g, 3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(f, 0.45));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SobolevNorm)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

static void BM_L2Norm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid g(64.0, n);
  auto f = random_complex_field(g, 4, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(l2_norm(f));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_L2Norm)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

static void BM_SpacetimeNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Window win(n, n, 16.0, 32.0);
  Grid g(win.L, win.n_x);
  auto u = tapered_free_mover(random_complex_field(g, 5, 0.4), +1, win);
  for (auto _ : state)
    benchmark::DoNotOptimize(spacetime_norm(u, 0.0, 0.51, NormFlavor::Xplus));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SpacetimeNorm)->RangeMultiplier(2)->Range(128, 512);
