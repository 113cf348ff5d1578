#pragma once

#include <cstdint>

#include "dkg/spectral_field.hpp"

namespace dkg {

/// Periodic Gaussian bump exp(-d(x,center)^2 / (2 width^2)) with d the torus
/// distance, optionally modulated by exp(i*k_mod*2*pi*x/L).
SpectralField gaussian_bump(const Grid& g, double center, double width, double amplitude = 1.0,
                            int k_mod = 0);

/// Pure mode amplitude * exp(i*xi_k*x) for integer wavenumber k.
SpectralField single_mode(const Grid& g, int k, cplx amplitude = {1.0, 0.0});

SpectralField constant_field(const Grid& g, cplx value);

/// Real-valued random field with |c(xi)| = amplitude * <xi>^(-decay) and
/// uniform phases, Hermitian-symmetric so physical samples are real.
/// Deterministic in seed.
SpectralField random_real_field(const Grid& g, std::uint64_t seed, double decay,
                                double amplitude = 1.0);

/// Complex random field, same magnitude law, no symmetry constraint.
SpectralField random_complex_field(const Grid& g, std::uint64_t seed, double decay,
                                   double amplitude = 1.0);

/// Exact band-limited embedding into a finer grid with the same period; the
/// coarse Nyquist coefficient is split evenly across +-Nyquist.
SpectralField embed(const SpectralField& f, const Grid& fine);

namespace detail {
/// Uniform double in [0, 1) from a splitmix64 stream; stable across platforms.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : state_(seed) {}
  double next();
  std::uint64_t next_u64();

 private:
  std::uint64_t state_;
};
}  // namespace detail

}  // namespace dkg
