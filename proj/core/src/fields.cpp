#include "dkg/fields.hpp"

#include <cmath>
#include <numbers>

namespace dkg {

namespace detail {

// splitmix64 (Steele et al.); full-period, trivially seedable.
std::uint64_t SeededUniform::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededUniform::next() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace detail

SpectralField gaussian_bump(const Grid& g, double center, double width, double amplitude,
                            int k_mod) {
  std::vector<cplx> samples(g.n);
  const double L = g.period;
  for (int j = 0; j < g.n; ++j) {
    double x = j * g.dx();
    double d = std::abs(x - center);
    d = std::min(d, L - d);
    double env = amplitude * std::exp(-d * d / (2.0 * width * width));
    if (k_mod == 0) {
      samples[j] = cplx{env, 0.0};
    } else {
      double ph = 2.0 * std::numbers::pi * k_mod * x / L;
      samples[j] = env * cplx{std::cos(ph), std::sin(ph)};
    }
  }
  return SpectralField::from_samples(g, samples);
}

SpectralField single_mode(const Grid& g, int k, cplx amplitude) {
  SpectralField f(g);
  int i = k >= 0 ? k : k + g.n;
  if (i < 0 || i >= g.n) throw std::invalid_argument("single_mode: wavenumber out of range");
  f.coeff[i] = amplitude * std::sqrt(g.period);
  return f;
}

SpectralField constant_field(const Grid& g, cplx value) {
  SpectralField f(g);
  f.coeff[0] = value * std::sqrt(g.period);
  return f;
}

SpectralField random_real_field(const Grid& g, std::uint64_t seed, double decay,
                                double amplitude) {
  SpectralField f(g);
  detail::SeededUniform rng(seed);
  const int half = g.n / 2;
  // k = 0 and the Nyquist mode are self-conjugate: real coefficients.
  f.coeff[0] = cplx{amplitude * (2.0 * rng.next() - 1.0), 0.0};
  for (int k = 1; k < half; ++k) {
    double mag = amplitude * std::pow(bracket(g.mode(k)), -decay);
    double ph = 2.0 * std::numbers::pi * rng.next();
    cplx c = mag * cplx{std::cos(ph), std::sin(ph)};
    f.coeff[k] = c;
    f.coeff[g.n - k] = std::conj(c);
  }
  f.coeff[half] =
      cplx{amplitude * std::pow(bracket(g.mode(half)), -decay) * (2.0 * rng.next() - 1.0), 0.0};
  return f;
}

SpectralField random_complex_field(const Grid& g, std::uint64_t seed, double decay,
                                   double amplitude) {
  SpectralField f(g);
  detail::SeededUniform rng(seed);
  for (int i = 0; i < g.n; ++i) {
    double mag = amplitude * std::pow(bracket(g.mode(i)), -decay);
    double ph = 2.0 * std::numbers::pi * rng.next();
    f.coeff[i] = mag * cplx{std::cos(ph), std::sin(ph)};
  }
  return f;
}

SpectralField embed(const SpectralField& f, const Grid& fine) {
  const Grid& coarse = f.grid;
  if (fine.period != coarse.period || fine.n < coarse.n)
    throw std::invalid_argument("embed: target grid must refine the source grid");
  SpectralField out(fine);
  for (int i = 0; i < coarse.n; ++i) {
    int k = coarse.wavenumber(i);
    if (k == coarse.n / 2 && fine.n > coarse.n) {
      out.coeff[k] += 0.5 * f.coeff[i];
      out.coeff[fine.n - k] += 0.5 * f.coeff[i];
    } else {
      out.coeff[k >= 0 ? k : k + fine.n] = f.coeff[i];
    }
  }
  return out;
}

}  // namespace dkg
