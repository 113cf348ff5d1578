#include "dkg/wave.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dkg {

WaveState::WaveState(SpectralField p, SpectralField pt, double t_)
    : phi(std::move(p)), phi_t(std::move(pt)), t(t_) {
  if (!(phi.grid == phi_t.grid)) throw std::invalid_argument("WaveState: grid mismatch");
}

WaveState free_wave_evolve(const WaveState& w, double t) {
  WaveState out = w;
  out.t = w.t + t;
  const Grid& g = w.grid();
  const double mu = t / g.period;
  for (int i = 0; i < g.n; ++i) {
    long k = g.wavenumber(i);
    if (k == 0) {
      out.phi.coeff[i] = w.phi.coeff[i] + t * w.phi_t.coeff[i];
      continue;
    }
    double axi = std::abs(g.mode(i));
    // cos/sin of |xi| t = 2 pi |k| mu, angle reduced before the trig call.
    double frac = std::fmod(std::abs(static_cast<double>(k)) * mu, 1.0);
    double c = std::cos(2.0 * std::numbers::pi * frac);
    double s = std::sin(2.0 * std::numbers::pi * frac);
    cplx p = w.phi.coeff[i], pt = w.phi_t.coeff[i];
    out.phi.coeff[i] = c * p + (s / axi) * pt;
    out.phi_t.coeff[i] = -axi * s * p + c * pt;
  }
  return out;
}

WaveState forced_wave_step(const WaveState& w, std::span<const double> rho_mid, double dt) {
  const Grid& g = w.grid();
  if (static_cast<int>(rho_mid.size()) != g.n)
    throw std::invalid_argument("forced_wave_step: rho sample count does not match grid");
  WaveState out = free_wave_evolve(w, dt);
  SpectralField rho = SpectralField::from_real_samples(g, rho_mid);
  const double mu = dt / g.period;
  for (int i = 0; i < g.n; ++i) {
    long k = g.wavenumber(i);
    if (k == 0) {
      out.phi.coeff[i] += 0.5 * dt * dt * rho.coeff[i];
      out.phi_t.coeff[i] += dt * rho.coeff[i];
      continue;
    }
    double axi = std::abs(g.mode(i));
    double frac = std::fmod(std::abs(static_cast<double>(k)) * mu, 1.0);
    double s = std::sin(2.0 * std::numbers::pi * frac);
    double sh = std::sin(std::numbers::pi * frac);
    // (1 - cos u)/xi^2 written as 2 sin^2(u/2)/xi^2 to avoid cancellation;
    // sin^2 is insensitive to the mod-1 parity loss in the half angle.
    out.phi.coeff[i] += (2.0 * sh * sh / (axi * axi)) * rho.coeff[i];
    out.phi_t.coeff[i] += (s / axi) * rho.coeff[i];
  }
  return out;
}

double energy_pair_norm(const WaveState& w, double r) {
  return sobolev_norm(w.phi, r) + sobolev_norm(w.phi_t, r - 1.0);
}

double wave_energy(const WaveState& w) {
  double sum = 0.0;
  const Grid& g = w.grid();
  for (int i = 0; i < g.n; ++i) {
    double xi = g.mode(i);
    sum += std::norm(w.phi_t.coeff[i]) + xi * xi * std::norm(w.phi.coeff[i]);
  }
  return sum;
}

}  // namespace dkg
