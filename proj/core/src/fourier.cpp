#include "dkg/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dkg {
namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are created once per (size, sign) with FFTW_ESTIMATE, which is
// deterministic (no runtime measurement), and FFTW_UNALIGNED so they can be
// executed on arbitrary caller buffers.
std::mutex g_plan_mutex;

fftw_plan plan_1d(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> probe(n);
  auto* p = reinterpret_cast<fftw_complex*>(probe.data());
  fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw_plan_dft_1d failed");
  cache.emplace(key, plan);
  return plan;
}

fftw_plan plan_2d(int rows, int cols, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> probe(static_cast<size_t>(rows) * cols);
  auto* p = reinterpret_cast<fftw_complex*>(probe.data());
  fftw_plan plan = fftw_plan_dft_2d(rows, cols, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw_plan_dft_2d failed");
  cache.emplace(key, plan);
  return plan;
}

void scale(std::span<cplx> v, double c) {
  for (auto& x : v) x *= c;
}

}  // namespace

namespace detail {

void fft_unitary(std::span<const cplx> in, std::span<cplx> out, Direction dir) {
  const int n = static_cast<int>(in.size());
  if (out.size() != in.size()) throw std::invalid_argument("fft_unitary: size mismatch");
  if (n == 0) throw std::invalid_argument("fft_unitary: empty input");
  if (out.data() != in.data()) std::copy(in.begin(), in.end(), out.begin());
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan_1d(n, sign), p, p);
  scale(out, 1.0 / std::sqrt(static_cast<double>(n)));
}

void fft2_unitary(std::span<const cplx> in, std::span<cplx> out, int n_rows, int n_cols,
                  Direction dir) {
  const size_t total = static_cast<size_t>(n_rows) * n_cols;
  if (in.size() != total || out.size() != total)
    throw std::invalid_argument("fft2_unitary: size mismatch");
  if (out.data() != in.data()) std::copy(in.begin(), in.end(), out.begin());
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  auto* p = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan_2d(n_rows, n_cols, sign), p, p);
  scale(out, 1.0 / std::sqrt(static_cast<double>(total)));
}

cplx unit_phase(long k, double mu) {
  double frac = std::fmod(static_cast<double>(k) * mu, 1.0);
  double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace detail

std::vector<cplx> spectral_transform(std::span<const cplx> samples, Direction dir) {
  if (samples.empty()) throw std::invalid_argument("spectral_transform: empty input");
  std::vector<cplx> out(samples.size());
  detail::fft_unitary(samples, out, dir);
  return out;
}

}  // namespace dkg
