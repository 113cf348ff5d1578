#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dkg/coupled.hpp"
#include "dkg/fields.hpp"
#include "dkg/nullform.hpp"
#include "dkg/rough_data.hpp"

namespace dkg::cli {

namespace {

SuiteReport charge_suite(std::uint64_t seed) {
  SuiteReport rep{"charge", {}, false, "", ""};
  Grid g(64.0, 1 << 10);
  SpectralField psi1 = gaussian_bump(g, 24.0, 1.5, 0.8, 3);
  SpectralField psi2 = gaussian_bump(g, 28.0, 1.5, 0.6, -2);
  SpinorState sp = to_eigenbasis(psi1, psi2);
  WaveState wv(g);
  wv.phi = gaussian_bump(g, 32.0, 2.0, 0.5);
  wv.phi_t = 0.1 * random_real_field(g, seed + 7, 2.5);

  const double q0 = charge(sp);
  double max_drift = 0.0;
  const double dt = 1.0 / 512.0;
  for (int k = 0; k < 4 * 512; ++k) {
    std::tie(sp, wv) = dkg_step(sp, wv, dt);
    max_drift = std::max(max_drift, std::abs(charge(sp) - q0) / q0);
  }
  rep.rows.push_back({"relative charge drift, T=4, n=2^10, dt=2^-9", max_drift <= 1e-10,
                      max_drift, 1e-10, ""});
  rep.pass = rep.rows.back().pass;
  return rep;
}

SuiteReport bilinear_suite(std::uint64_t seed) {
  SuiteReport rep{"bilinear", {}, false, "", ""};
  Grid g(64.0, 1 << 10);
  Window win(256, g.n, 16.0, g.period);
  detail::SeededUniform rng(seed + 100);
  double lo = 1.0, hi = 0.0;
  bool all_below_root2 = true;
  char row[256];
  rep.probe_csv = "center_f,width_f,kmod_f,center_g,width_g,kmod_g,ratio\n";
  for (int i = 0; i < 20; ++i) {
    double sf = 0.6 + 0.3 * rng.next(), sg = 0.6 + 0.3 * rng.next();
    double cf = 11.0 + 2.0 * rng.next();
    double cg = cf + 10.0 + 4.0 * rng.next();
    int kf = static_cast<int>(rng.next() * 6), kg = static_cast<int>(rng.next() * 6);
    SpectralField f = gaussian_bump(g, cf, sf, 1.0, kf);
    SpectralField gg = gaussian_bump(g, cg, sg, 1.0, kg);
    double ratio = free_wave_product_ratio(f, gg, win);
    std::snprintf(row, sizeof row, "%.17g,%.17g,%d,%.17g,%.17g,%d,%.17g\n", cf, sf, kf, cg, sg,
                  kg, ratio);
    rep.probe_csv += row;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    all_below_root2 = all_below_root2 && ratio <= std::sqrt(2.0);
  }
  rep.rows.push_back({"opposite-sign ratio within [0.700, 0.714], 20 pairs",
                      lo >= 0.700 && hi <= 0.714, hi, 0.714, "sharp value 0.70711"});
  rep.rows.push_back({"opposite-sign ratio <= sqrt(2)", all_below_root2, hi, std::sqrt(2.0), ""});

  SpectralField f = gaussian_bump(g, 20.0, 1.0);
  SpectralField g2 = gaussian_bump(g, 20.0, 1.0);
  Window win8(256, g.n, 8.0, g.period);
  double same = free_wave_product_ratio(f, g2, win8, +1, +1);
  rep.rows.push_back({"same-sign control exceeds sqrt(2) at T_w=8", same > std::sqrt(2.0), same,
                      std::sqrt(2.0), "null structure is necessary"});
  rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](auto& r) { return r.pass; });
  return rep;
}

SuiteReport algebraic_suite(std::uint64_t seed) {
  SuiteReport rep{"algebraic", {}, false, "", ""};
  auto fuzz = fuzz_algebraic_inequality(seed + 1, 1000000);
  rep.rows.push_back({"randomized fuzz, 1e6 tuples in [-1e3,1e3]^4",
                      fuzz.violations.empty(), static_cast<double>(fuzz.violations.size()), 0.0,
                      ""});
  auto sweep = boundary_sweep_algebraic(seed + 2, 100000);
  rep.rows.push_back({"boundary sweep (A, B+, C- pinned to zero)", sweep.violations.empty(),
                      static_cast<double>(sweep.violations.size()), 0.0, ""});
  AlgebraicFuzzReport merged = fuzz;
  merged.violations.insert(merged.violations.end(), sweep.violations.begin(),
                           sweep.violations.end());
  rep.violations_json = violations_json(merged);
  rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](auto& r) { return r.pass; });
  return rep;
}

SuiteReport product_suite(std::uint64_t seed) {
  SuiteReport rep{"product", {}, false, "", ""};
  Grid g(64.0, 1 << 7);
  auto admissible = product_law_probe(1.0, 1.0, 0.0, 100, g, seed + 3);
  rep.rows.push_back({"a=b=1, c=0 stable under resolution doubling", admissible.stable,
                      admissible.max_ratio_doubled, 1.05 * admissible.max_ratio_base, ""});
  auto violating = product_law_probe(0.0, 0.0, 0.0, 100, g, seed + 4);
  rep.rows.push_back({"a=b=c=0 flagged unstable (violates a+b+c > 1/2)", !violating.stable,
                      violating.max_ratio_doubled, 1.05 * violating.max_ratio_base, ""});
  char row[200];
  rep.probe_csv = "a,b,c,max_ratio_base,max_ratio_doubled,stable\n";
  std::snprintf(row, sizeof row, "1,1,0,%.17g,%.17g,%d\n", admissible.max_ratio_base,
                admissible.max_ratio_doubled, admissible.stable ? 1 : 0);
  rep.probe_csv += row;
  std::snprintf(row, sizeof row, "0,0,0,%.17g,%.17g,%d\n", violating.max_ratio_base,
                violating.max_ratio_doubled, violating.stable ? 1 : 0);
  rep.probe_csv += row;
  rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](auto& r) { return r.pass; });
  return rep;
}

double apriori_constant(int log2n, std::uint64_t seed, double r, double T, double dt) {
  Grid g(64.0, 1 << log2n);
  // psi0 in L2 (resolved decaying spectrum), phi in H^r: one band-limited
  // data object shared across resolutions.
  Grid base(64.0, 1 << 8);
  SpinorState sp(embed(random_complex_field(base, seed + 11, 1.3, 0.5), g),
                 embed(random_complex_field(base, seed + 12, 1.3, 0.5), g));
  WaveState wv(embed(random_real_field(base, seed + 13, 2.0, 0.5), g),
               embed(random_real_field(base, seed + 14, 3.0, 0.5), g));

  double denom = energy_pair_norm(wv, r) + T * charge(sp);
  double sup = energy_pair_norm(wv, r);
  long steps = std::lround(T / dt);
  for (long k = 0; k < steps; ++k) {
    std::tie(sp, wv) = dkg_step(sp, wv, dt);
    sup = std::max(sup, energy_pair_norm(wv, r));
  }
  return sup / denom;
}

SuiteReport apriori_suite(std::uint64_t seed) {
  SuiteReport rep{"apriori", {}, false, "", ""};
  const double r = 0.45, T = 2.0;
  double c1 = apriori_constant(8, seed, r, T, 1.0 / 256.0);
  double c2 = apriori_constant(9, seed, r, T, 1.0 / 512.0);
  rep.rows.push_back({"measured C finite", std::isfinite(c1) && c1 < 50.0, c1, 50.0, ""});
  double rel = std::abs(c2 - c1) / c1;
  rep.rows.push_back({"C stable within 10% under resolution doubling", rel <= 0.10, rel, 0.10,
                      "n=2^8 vs 2^9"});
  rep.pass = std::all_of(rep.rows.begin(), rep.rows.end(), [](auto& r) { return r.pass; });
  return rep;
}

}  // namespace

std::vector<std::string> known_suites() {
  return {"charge", "bilinear", "algebraic", "product", "apriori", "all"};
}

std::vector<SuiteReport> run_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<SuiteReport> out;
  if (suite == "charge")
    out.push_back(charge_suite(seed));
  else if (suite == "bilinear")
    out.push_back(bilinear_suite(seed));
  else if (suite == "algebraic")
    out.push_back(algebraic_suite(seed));
  else if (suite == "product")
    out.push_back(product_suite(seed));
  else if (suite == "apriori")
    out.push_back(apriori_suite(seed));
  else if (suite == "all") {
    out.push_back(charge_suite(seed));
    out.push_back(bilinear_suite(seed));
    out.push_back(algebraic_suite(seed));
    out.push_back(product_suite(seed));
    out.push_back(apriori_suite(seed));
  } else {
    throw std::invalid_argument("unknown verify suite: " + suite);
  }
  return out;
}

}  // namespace dkg::cli
