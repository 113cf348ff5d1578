#include <benchmark/benchmark.h>

#include "dkg/fields.hpp"
#include "dkg/fourier.hpp"
#include "dkg/spectral_field.hpp"

using namespace dkg;

static void BM_SpectralTransform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid g(64.0, n);
  auto f = random_complex_field(g, 1, 0.3);
  auto samples = f.to_samples();
  std::vector<cplx> out(n);
  for (auto _ : state) {
    detail::fft_unitary(samples, out, Direction::Forward);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SpectralTransform)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

static void BM_FieldRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid g(64.0, n);
  auto f = random_complex_field(g, 2, 0.3);
  for (auto _ : state) {
    auto samples = f.to_samples();
    auto back = SpectralField::from_samples(g, samples);
    benchmark::DoNotOptimize(back.coeff.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_FieldRoundTrip)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

static void BM_Fft2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<cplx> in(static_cast<size_t>(n) * n, cplx{1.0, 0.5});
  std::vector<cplx> out(in.size());
  for (auto _ : state) {
    detail::fft2_unitary(in, out, n, n, Direction::Forward);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Fft2)->RangeMultiplier(2)->Range(128, 512);
