#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dkg/dirac.hpp"
#include "dkg/fields.hpp"
#include "dkg/rough_data.hpp"
#include "dkg/spectral_field.hpp"
#include "dkg/wave.hpp"

namespace test_support {

using dkg::cplx;

// O(n^2) discrete Fourier sum, independent of the FFT path.
inline std::vector<cplx> slow_dft(const std::vector<cplx>& x, int sign) {
  const int n = static_cast<int>(x.size());
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) {
    cplx acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      double ang = sign * 2.0 * std::numbers::pi * j * k / n;
      acc += x[j] * cplx{std::cos(ang), std::sin(ang)};
    }
    out[k] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Norm of the rough-data magnitude law by direct mode summation (phases do
// not enter); the brute-force oracle for the generator's norms.
inline double rough_norm_oracle(const dkg::Grid& g, double s, double amplitude, double a) {
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double mag = dkg::rough_magnitude(g.mode(i), s, amplitude);
    sum += std::pow(dkg::bracket(g.mode(i)), 2.0 * a) * mag * mag;
  }
  return std::sqrt(sum);
}

// Same oracle restricted to a frequency band (lo < |xi| <= hi).
inline double rough_band_norm_oracle(const dkg::Grid& g, double s, double amplitude, double a,
                                     double lo, double hi) {
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double axi = std::abs(g.mode(i));
    if (axi <= lo || axi > hi) continue;
    double mag = dkg::rough_magnitude(g.mode(i), s, amplitude);
    sum += std::pow(dkg::bracket(g.mode(i)), 2.0 * a) * mag * mag;
  }
  return std::sqrt(sum);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double max_coeff_distance(const dkg::SpectralField& a, const dkg::SpectralField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.coeff.size(); ++i) m = std::max(m, std::abs(a.coeff[i] - b.coeff[i]));
  return m;
}

inline dkg::SpinorState random_spinor(const dkg::Grid& g, std::uint64_t seed, double decay = 0.8,
                                      double amplitude = 1.0) {
  return dkg::SpinorState(dkg::random_complex_field(g, seed, decay, amplitude),
                          dkg::random_complex_field(g, seed + 1, decay, amplitude));
}

inline dkg::WaveState random_wave(const dkg::Grid& g, std::uint64_t seed, double decay = 1.5,
                                  double amplitude = 1.0) {
  dkg::WaveState w(g);
  w.phi = dkg::random_real_field(g, seed, decay, amplitude);
  w.phi_t = dkg::random_real_field(g, seed + 1, decay + 1.0, amplitude);
  return w;
}

inline double spinor_rel_distance(const dkg::SpinorState& a, const dkg::SpinorState& b) {
  double d = std::sqrt(std::pow(dkg::l2_distance(a.a_plus, b.a_plus), 2) +
                       std::pow(dkg::l2_distance(a.a_minus, b.a_minus), 2));
  double scale = std::sqrt(dkg::charge(b));
  return d / std::max(scale, 1e-300);
}

}  // namespace test_support
