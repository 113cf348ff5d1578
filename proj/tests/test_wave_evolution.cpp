#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dkg/fields.hpp"
#include "dkg/wave.hpp"
#include "test_support.hpp"

using namespace dkg;
using namespace test_support;

TEST_CASE("free wave: standing mode, zero data, energy, reversibility") {
  Grid g(2.0 * std::numbers::pi, 128);

  SUBCASE("phi1 = 0, cos mode gives a standing wave") {
    WaveState w(g);
    // cos(xi_3 x) = (e^{i xi_3 x} + e^{-i xi_3 x}) / 2
    w.phi = 0.5 * (single_mode(g, 3) + single_mode(g, -3));
    double xi3 = std::abs(g.mode(3));
    for (double t : {0.3, 1.1, 2.9}) {
      auto evolved = free_wave_evolve(w, t);
      auto expect = std::cos(xi3 * t) * 0.5 * (single_mode(g, 3) + single_mode(g, -3));
      CHECK(max_coeff_distance(evolved.phi, expect) < 1e-12);
    }
  }
  SUBCASE("zero data stays zero") {
    WaveState w(g);
    auto evolved = free_wave_evolve(w, 5.0);
    CHECK(l2_norm(evolved.phi) == 0.0);
    CHECK(l2_norm(evolved.phi_t) == 0.0);
  }
  SUBCASE("discrete oscillator energy is constant over [0, 10]") {
    auto w = random_wave(g, 61);
    double e0 = wave_energy(w);
    for (int i = 1; i <= 20; ++i) {
      auto evolved = free_wave_evolve(w, 0.5 * i);
      CHECK(rel_err(wave_energy(evolved), e0) < 1e-11);
    }
  }
  SUBCASE("evolve(-t) inverts evolve(t)") {
    auto w = random_wave(g, 62);
    auto back = free_wave_evolve(free_wave_evolve(w, 3.7), -3.7);
    CHECK(max_coeff_distance(back.phi, w.phi) < 1e-11);
    CHECK(max_coeff_distance(back.phi_t, w.phi_t) < 1e-11);
  }
}

TEST_CASE("forced steps: constant source double integration is exact") {
  Grid g(32.0, 64);
  WaveState w(g);
  const double c = 0.8, dt = 0.01;
  std::vector<double> rho(g.n, c);
  for (int k = 0; k < 200; ++k) w = forced_wave_step(w, rho, dt);
  double t = 200 * dt;
  // only the xi = 0 mode carries content: phi = c t^2 / 2
  auto samples = w.phi.to_real_samples();
  for (double v : samples) CHECK(v == doctest::Approx(c * t * t / 2).epsilon(1e-13));
  auto vt = w.phi_t.to_real_samples();
  for (double v : vt) CHECK(v == doctest::Approx(c * t).epsilon(1e-13));
}

TEST_CASE("forced steps: manufactured solution converges at second order") {
  // phi*(t, x) = sin(2t) cos(x) on the 2 pi torus forces
  // rho* = (d_tt - d_xx) phi* = -3 sin(2t) cos(x); the sampled-source step
  // must recover phi* at second order. (A temporal frequency equal to |xi|
  // would make phi* an exact free wave and the test vacuous.)
  Grid g(2.0 * std::numbers::pi, 64);
  auto cosx = [&](double amp) { return amp * 0.5 * (single_mode(g, 1) + single_mode(g, -1)); };
  const double T = 1.0;

  auto run = [&](double dt) {
    WaveState w(g);
    w.phi = cosx(0.0);
    w.phi_t = cosx(2.0);  // d_t phi*(0) = 2 cos x
    long steps = std::lround(T / dt);
    std::vector<double> rho(g.n);
    for (long k = 0; k < steps; ++k) {
      double tm = (k + 0.5) * dt;
      for (int j = 0; j < g.n; ++j) rho[j] = -3.0 * std::sin(2.0 * tm) * std::cos(j * g.dx());
      w = forced_wave_step(w, rho, dt);
    }
    return w;
  };
  auto error = [&](double dt) {
    auto w = run(dt);
    auto exact = cosx(std::sin(2.0 * T));
    return l2_distance(w.phi, exact);
  };
  double e1 = error(T / 64), e2 = error(T / 128), e3 = error(T / 256);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.075));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("forced step with zero source equals the free flow") {
  Grid g(16.0, 64);
  auto w = random_wave(g, 63);
  std::vector<double> rho(g.n, 0.0);
  auto forced = forced_wave_step(w, rho, 0.07);
  auto free = free_wave_evolve(w, 0.07);
  CHECK(max_coeff_distance(forced.phi, free.phi) == 0.0);
  CHECK(max_coeff_distance(forced.phi_t, free.phi_t) == 0.0);
}

TEST_CASE("energy pair norm values and the free-evolution growth bound") {
  Grid g(64.0, 256);
  const double r = 0.45;

  SUBCASE("zero state") {
    WaveState w(g);
    CHECK(energy_pair_norm(w, r) == 0.0);
  }
  SUBCASE("single mode with phi_t = 0") {
    WaveState w(g);
    w.phi = single_mode(g, 9);
    double expect = std::sqrt(g.period) * std::pow(bracket(g.mode(9)), r);
    CHECK(energy_pair_norm(w, r) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("sup_t ||phi[t]||_{H^r} <= (1+T) ||phi[0]||_{H^r} for free waves") {
    const double T = 10.0;
    for (int trial = 0; trial < 20; ++trial) {
      auto w = random_wave(g, 700 + trial, 1.2, 1.0);
      double base = energy_pair_norm(w, r);
      double sup = base;
      for (int i = 1; i <= 40; ++i)
        sup = std::max(sup, energy_pair_norm(free_wave_evolve(w, T * i / 40.0), r));
      CHECK(sup <= (1.0 + T) * base);
    }
  }
}

TEST_CASE("reality is preserved over 1e4 forced steps") {
  Grid g(16.0, 64);
  auto w = random_wave(g, 64);
  auto src_field = random_real_field(g, 65, 1.5, 0.5);
  auto rho = src_field.to_real_samples();
  for (int k = 0; k < 10000; ++k) w = forced_wave_step(w, rho, 5e-4);
  auto samples = w.phi.to_samples();
  double max_abs = 0.0, max_imag = 0.0;
  for (const auto& v : samples) {
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  CHECK(max_imag <= 1e-12 * std::max(1.0, max_abs));
}
