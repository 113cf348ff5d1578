#pragma once

#include <span>

#include "dkg/spectral_field.hpp"

namespace dkg {

/// Real scalar field pair (phi, d_t phi) for the wave equation
/// d_t^2 phi - d_x^2 phi = rho.
struct WaveState {
  SpectralField phi;
  SpectralField phi_t;
  double t = 0.0;

  explicit WaveState(const Grid& g) : phi(g), phi_t(g) {}
  WaveState(SpectralField p, SpectralField pt, double t_ = 0.0);

  const Grid& grid() const { return phi.grid; }
};

/// Exact per-mode free flow over time t:
///   phi_hat(t)  = cos(|xi| t) phi_hat + sin(|xi| t)/|xi| phit_hat
///   phit_hat(t) = -|xi| sin(|xi| t) phi_hat + cos(|xi| t) phit_hat
/// with the xi = 0 mode following its polynomial flow phi + t*phi_t.
/// Reversible: evolve(-t) inverts evolve(t) to rounding.
WaveState free_wave_evolve(const WaveState& w, double t);

/// One forced step over dt with the source held constant at its half-step
/// sample: exact Duhamel of the frozen source on top of the free flow,
///   phi_hat  += (1 - cos(|xi| dt))/xi^2 * rho_hat
///   phit_hat += sin(|xi| dt)/|xi| * rho_hat
/// (xi = 0: dt^2/2 and dt). Globally second order; rho = 0 reduces to the
/// free flow exactly.
WaveState forced_wave_step(const WaveState& w, std::span<const double> rho_mid, double dt);

/// ||phi[t]||_{H^r} = ||phi(t)||_{H^r} + ||d_t phi(t)||_{H^{r-1}}.
double energy_pair_norm(const WaveState& w, double r);

/// Discrete oscillator invariant sum(|phit_hat|^2 + xi^2 |phi_hat|^2),
/// conserved exactly by the free flow.
double wave_energy(const WaveState& w);

}  // namespace dkg
