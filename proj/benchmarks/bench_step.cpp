#include <benchmark/benchmark.h>

#include <tuple>

#include "dkg/coupled.hpp"
#include "dkg/fields.hpp"

using namespace dkg;

namespace {

std::pair<SpinorState, WaveState> bench_state(int n) {
  Grid g(64.0, n);
  SpinorState sp(random_complex_field(g, 6, 0.8, 0.5), random_complex_field(g, 7, 0.8, 0.5));
  WaveState wv(random_real_field(g, 8, 2.0, 0.5), random_real_field(g, 9, 3.0, 0.2));
  return {std::move(sp), std::move(wv)};
}

}  // namespace

static void BM_DkgStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [sp, wv] = bench_state(n);
  const double dt = 1.0 / 1024.0;
  for (auto _ : state) {
    std::tie(sp, wv) = dkg_step(sp, wv, dt);
    benchmark::DoNotOptimize(sp.a_plus.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DkgStep)->RangeMultiplier(2)->Range(1 << 10, 1 << 13);

static void BM_DkgStepNoDealias(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [sp, wv] = bench_state(n);
  SolverOptions opts;
  opts.dealias = false;
  const double dt = 1.0 / 1024.0;
  for (auto _ : state) {
    std::tie(sp, wv) = dkg_step(sp, wv, dt, opts);
    benchmark::DoNotOptimize(sp.a_plus.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DkgStepNoDealias)->RangeMultiplier(2)->Range(1 << 10, 1 << 13);

static void BM_FreeDiracEvolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [sp, wv] = bench_state(n);
  for (auto _ : state) {
    sp = free_dirac_evolve(sp, 1.0 / 1024.0);
    benchmark::DoNotOptimize(sp.a_plus.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_FreeDiracEvolve)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

static void BM_PotentialSubstep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto [sp, wv] = bench_state(n);
  auto w = wv.phi.to_real_samples();
  for (auto _ : state) {
    sp = potential_substep(sp, w, 1.0 / 1024.0);
    benchmark::DoNotOptimize(sp.a_plus.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PotentialSubstep)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);
