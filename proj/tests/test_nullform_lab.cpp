#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dkg/errors.hpp"
#include "dkg/fields.hpp"
#include "dkg/nullform.hpp"
#include "test_support.hpp"

using namespace dkg;
using namespace test_support;

TEST_CASE("window taper equals 1 exactly on the middle half") {
  Window win(128, 128, 8.0, 32.0);
  CHECK(time_taper(win, 0.0) == 0.0);
  CHECK(time_taper(win, 2.0) == doctest::Approx(1.0));
  CHECK(time_taper(win, 4.0) == 1.0);
  CHECK(time_taper(win, 5.9) == 1.0);
  CHECK(time_taper(win, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Window(100, 128, 8.0, 32.0), std::invalid_argument);
  CHECK_THROWS_AS(Window(128, 128, 8.0, 32.0, 0.75), std::invalid_argument);
}

TEST_CASE("spacetime_norm: Parseval at a = b = 0, taper precondition, monotonicity") {
  Window win(64, 128, 8.0, 32.0);
  Grid g(win.L, win.n_x);

  SpacetimeField f(win);
  detail::SeededUniform rng(77);
  for (int j = 0; j < win.n_t; ++j)
    for (int k = 0; k < win.n_x; ++k)
      f.at(j, k) = cplx{2.0 * rng.next() - 1.0, 2.0 * rng.next() - 1.0};

  SUBCASE("norm before tapering is rejected") {
    CHECK_THROWS_AS(spacetime_norm(f, 0.0, 0.0, NormFlavor::H), std::invalid_argument);
  }

  f.apply_time_taper();

  SUBCASE("zero field") {
    SpacetimeField z(win);
    z.apply_time_taper();
    CHECK(spacetime_norm(z, 0.3, 0.6, NormFlavor::Xplus) == 0.0);
  }
  SUBCASE("a = b = 0 equals the direct quadrature") {
    for (auto flavor : {NormFlavor::H, NormFlavor::Xplus, NormFlavor::Xminus})
      CHECK(rel_err(spacetime_norm(f, 0.0, 0.0, flavor), f.l2_quadrature()) < 1e-10);
  }
  SUBCASE("weights are monotone in a and b") {
    double base = spacetime_norm(f, 0.0, 0.0, NormFlavor::H);
    CHECK(spacetime_norm(f, 0.4, 0.0, NormFlavor::H) >= base);
    CHECK(spacetime_norm(f, 0.0, 0.55, NormFlavor::H) >= base);
    CHECK(spacetime_norm(f, 0.4, 0.55, NormFlavor::H) >=
          spacetime_norm(f, 0.4, 0.3, NormFlavor::H));
  }
}

TEST_CASE("free mover X norm matches the taper-transform oracle") {
  // For u(t,x) = taper(t) f(x-t) on a window with T_w = L, the 2D transform
  // factorizes: c_u(tau, xi) = c_f(xi) c_T(tau + xi), so the X+ norm equals
  // ||f|| sqrt(sum <lambda>^{2b} |c_T(lambda)|^2) up to wrap of the taper
  // spectrum (a 10% allowance).
  Window win(256, 256, 32.0, 32.0);
  Grid g(win.L, win.n_x);
  SpectralField f = gaussian_bump(g, 16.0, 1.5, 1.0, 24);
  auto u = tapered_free_mover(f, +1, win);
  const double b = 0.6;
  double norm = spacetime_norm(u, 0.0, b, NormFlavor::Xplus);

  // taper transform by direct summation
  std::vector<cplx> taper(win.n_t);
  for (int j = 0; j < win.n_t; ++j) taper[j] = cplx{time_taper(win, j * win.dt()), 0.0};
  auto that = slow_dft(taper, -1);
  double gsum = 0.0;
  for (int m = 0; m < win.n_t; ++m) {
    double lam = win.tau(m);
    gsum += std::pow(bracket(lam), 2.0 * b) * std::norm(that[m]) * win.dt();
  }
  double baseline = l2_norm(f) * std::sqrt(gsum);
  CHECK(norm <= 1.1 * baseline);
  CHECK(norm >= 0.9 * baseline);

  // the same mover measured in the opposite-sign norm is much larger
  double wrong_sign = spacetime_norm(u, 0.0, b, NormFlavor::Xminus);
  CHECK(wrong_sign > 2.5 * norm);
}

TEST_CASE("free_wave_product_ratio: sharp constant, bound, same-sign growth") {
  Grid g(64.0, 1024);
  Window win(256, 1024, 16.0, 64.0);

  SUBCASE("opposite movers: 20 random compact pairs hit 2^{-1/2} within 1%") {
    detail::SeededUniform rng(2718);
    for (int i = 0; i < 20; ++i) {
      double sf = 0.6 + 0.3 * rng.next(), sg = 0.6 + 0.3 * rng.next();
      double cf = 11.0 + 2.0 * rng.next();
      double cg = cf + 10.0 + 4.0 * rng.next();
      int kf = static_cast<int>(rng.next() * 6), kg = static_cast<int>(rng.next() * 6);
      auto f = gaussian_bump(g, cf, sf, 1.0, kf);
      auto g2 = gaussian_bump(g, cg, sg, 1.0, kg);
      double ratio = free_wave_product_ratio(f, g2, win);
      CHECK(ratio > 0.700);
      CHECK(ratio < 0.714);
      CHECK(ratio <= std::sqrt(2.0));
    }
  }

  SUBCASE("oracle cross-check: change-of-variables quadrature") {
    auto f = gaussian_bump(g, 12.0, 0.8);
    auto g2 = gaussian_bump(g, 24.0, 1.1);
    double ratio = free_wave_product_ratio(f, g2, win);
    // independent oracle: (1/2) integral |f(a)|^2 |g(b)|^2 over 0 <= b-a <= 2 T_w
    auto fs = f.to_samples();
    auto gs = g2.to_samples();
    double num = 0.0, nf = 0.0, ng = 0.0;
    for (int i = 0; i < g.n; ++i) {
      nf += std::norm(fs[i]) * g.dx();
      ng += std::norm(gs[i]) * g.dx();
    }
    for (int i = 0; i < g.n; ++i) {
      double a = i * g.dx();
      for (int j = 0; j < g.n; ++j) {
        double bb = j * g.dx();
        if (bb - a >= 0.0 && bb - a <= 2.0 * win.T_w)
          num += std::norm(fs[i]) * std::norm(gs[j]);
      }
    }
    double oracle = std::sqrt(0.5 * num * g.dx() * g.dx() / (nf * ng));
    CHECK(rel_err(ratio, oracle) < 1e-3);
    CHECK(oracle == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-6));
  }

  SUBCASE("same-sign control grows like sqrt(T_w) and crosses sqrt(2) at T_w = 8") {
    auto f = gaussian_bump(g, 20.0, 1.0);
    auto g2 = gaussian_bump(g, 20.0, 1.0);
    Window win4(128, 1024, 4.0, 64.0);
    Window win8(128, 1024, 8.0, 64.0);
    Window win16(256, 1024, 16.0, 64.0);
    double r4 = free_wave_product_ratio(f, g2, win4, +1, +1);
    double r8 = free_wave_product_ratio(f, g2, win8, +1, +1);
    double r16 = free_wave_product_ratio(f, g2, win16, +1, +1);
    // analytic value sqrt(T_w) / (2 pi)^{1/4} for unit gaussians
    CHECK(r8 == doctest::Approx(std::sqrt(8.0) / std::pow(2 * std::numbers::pi, 0.25))
                    .epsilon(1e-3));
    CHECK(r4 < std::sqrt(2.0));
    CHECK(r8 > std::sqrt(2.0));
    CHECK(r16 > r8);
    CHECK(r16 == doctest::Approx(r8 * std::sqrt(2.0)).epsilon(1e-2));
  }

  SUBCASE("vanishing factor reports undefined") {
    auto f = gaussian_bump(g, 20.0, 1.0);
    SpectralField zero(g);
    CHECK(std::isnan(free_wave_product_ratio(f, zero, win)));
  }

  SUBCASE("support near the seam raises WindowError") {
    auto f = gaussian_bump(g, 60.0, 1.0);  // would cross x = L while moving right
    auto g2 = gaussian_bump(g, 30.0, 1.0);
    CHECK_THROWS_AS(free_wave_product_ratio(f, g2, win), WindowError);
  }
}

TEST_CASE("algebraic inequality: worked points, fuzz, boundary sweep") {
  SUBCASE("eta = 0 makes the left side vanish") {
    auto c = algebraic_inequality_check(ModePoint{3.0, -2.0, 5.0, 0.0});
    CHECK(c.lhs == 0.0);
    CHECK(c.holds);
  }
  SUBCASE("tau = xi = lambda = eta = 1") {
    auto c = algebraic_inequality_check(ModePoint{1.0, 1.0, 1.0, 1.0});
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == doctest::Approx(3.0));
    CHECK(c.holds);
  }
  SUBCASE("1e6 random tuples: zero violations") {
    auto rep = fuzz_algebraic_inequality(13, 1000000);
    CHECK(rep.trials == 1000000);
    CHECK(rep.violations.empty());
  }
  SUBCASE("boundary families: zero violations") {
    auto rep = boundary_sweep_algebraic(17, 100000);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("product law probe: admissible stable, violating unstable, zero mode") {
  Grid g(64.0, 128);

  SUBCASE("trials below 100 are rejected") {
    CHECK_THROWS_AS(product_law_probe(1.0, 1.0, 0.0, 50, g, 1), std::invalid_argument);
  }
  SUBCASE("a = b = 1, c = 0 sits inside the admissible region") {
    auto res = product_law_probe(1.0, 1.0, 0.0, 100, g, 5);
    CHECK(res.stable);
  }
  SUBCASE("a = b = c = 0 violates a+b+c > 1/2 and destabilizes") {
    auto res = product_law_probe(0.0, 0.0, 0.0, 100, g, 5);
    CHECK(!res.stable);
    CHECK(res.max_ratio_doubled > 1.2 * res.max_ratio_base);
  }
  SUBCASE("constant fields give the resolution-independent normalization 1/sqrt(L)") {
    for (int n : {128, 256}) {
      Grid gn(64.0, n);
      auto one = constant_field(gn, {1.0, 0.0});
      auto prod_samples = std::vector<cplx>(gn.n, cplx{1.0, 0.0});
      auto fg = SpectralField::from_samples(gn, prod_samples);
      double ratio = sobolev_norm(fg, -0.3) / (sobolev_norm(one, 0.7) * sobolev_norm(one, 0.2));
      CHECK(ratio == doctest::Approx(1.0 / std::sqrt(gn.period)).epsilon(1e-12));
    }
  }
}

TEST_CASE("duhamel gain probe: degenerate input, positive slope, taper robustness") {
  Grid g(32.0, 256);
  std::vector<double> dts{0.5, 1.0, 2.0, 4.0};

  SUBCASE("fewer than 4 interval lengths is an error") {
    std::vector<double> three{0.5, 1.0, 2.0};
    CHECK_THROWS_AS(duhamel_gain_probe(0.45, 0.01, three, g), std::invalid_argument);
  }
  SUBCASE("zero forcing is degenerate") {
    DuhamelProbeOptions opts;
    opts.n_t = 64;
    opts.phi_amplitude = 0.0;
    auto res = duhamel_gain_probe(0.45, 0.01, dts, g, opts);
    CHECK(res.degenerate);
    for (double r : res.ratios) CHECK(r == 0.0);
  }
  SUBCASE("the fitted slope is positive and taper-robust") {
    DuhamelProbeOptions opts;
    opts.n_t = 128;
    auto res = duhamel_gain_probe(0.45, 0.01, dts, g, opts);
    REQUIRE(!res.degenerate);
    CHECK(res.slope > 0.0);

    DuhamelProbeOptions wide = opts;
    wide.taper_fraction = 0.5;
    auto res2 = duhamel_gain_probe(0.45, 0.01, dts, g, wide);
    CHECK(std::abs(res2.slope - res.slope) <= 0.1);
  }
}
