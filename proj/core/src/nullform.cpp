#include "dkg/nullform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dkg/errors.hpp"
#include "dkg/fields.hpp"
#include "dkg/line_fit.hpp"

namespace dkg {

Window::Window(int n_t_, int n_x_, double T_w_, double L_, double taper_fraction_)
    : n_t(n_t_), n_x(n_x_), T_w(T_w_), L(L_), taper_fraction(taper_fraction_) {
  auto pow2 = [](int v) { return v >= 2 && (v & (v - 1)) == 0; };
  if (!pow2(n_t) || !pow2(n_x))
    throw std::invalid_argument("Window: n_t and n_x must be powers of two");
  if (!(T_w > 0.0) || !(L > 0.0)) throw std::invalid_argument("Window: extents must be positive");
  if (!(taper_fraction > 0.0) || !(taper_fraction <= 0.5))
    throw std::invalid_argument("Window: taper_fraction must lie in (0, 1/2]");
}

double Window::tau(int m) const {
  return 2.0 * std::numbers::pi * tau_wavenumber(m) / T_w;
}

double Window::xi(int l) const {
  return 2.0 * std::numbers::pi * xi_wavenumber(l) / L;
}

double time_taper(const Window& win, double t) {
  const double w = win.taper_fraction * win.T_w;
  if (t < 0.0 || t > win.T_w) return 0.0;
  if (t < w) return 0.5 - 0.5 * std::cos(std::numbers::pi * t / w);
  if (t > win.T_w - w) return 0.5 - 0.5 * std::cos(std::numbers::pi * (win.T_w - t) / w);
  return 1.0;
}

SpacetimeField::SpacetimeField(const Window& win)
    : win_(win), values_(static_cast<size_t>(win.n_t) * win.n_x, cplx{0.0, 0.0}) {}

void SpacetimeField::apply_time_taper() {
  for (int j = 0; j < win_.n_t; ++j) {
    double w = time_taper(win_, j * win_.dt());
    for (auto& v : row(j)) v *= w;
  }
  tapered_ = true;
}

std::vector<cplx> SpacetimeField::mode_coefficients() const {
  std::vector<cplx> out(values_.size());
  detail::fft2_unitary(values_, out, win_.n_t, win_.n_x, Direction::Forward);
  const double cal = std::sqrt(win_.dt() * win_.dx());
  for (auto& c : out) c *= cal;
  return out;
}

double SpacetimeField::l2_quadrature() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return std::sqrt(sum * win_.dt() * win_.dx());
}

double spacetime_norm(const SpacetimeField& f, double a, double b, NormFlavor flavor) {
  if (!f.tapered())
    throw std::invalid_argument("spacetime_norm: time taper must be applied first");
  const Window& w = f.window();
  std::vector<cplx> c = f.mode_coefficients();
  double sum = 0.0;
  for (int m = 0; m < w.n_t; ++m) {
    double tau = w.tau(m);
    for (int l = 0; l < w.n_x; ++l) {
      double xi = w.xi(l);
      double weight_arg;
      switch (flavor) {
        case NormFlavor::H:
          weight_arg = std::abs(tau) - std::abs(xi);
          break;
        case NormFlavor::Xplus:
          weight_arg = tau + xi;
          break;
        default:
          weight_arg = tau - xi;
          break;
      }
      double weight = std::pow(bracket(xi), 2.0 * a) * std::pow(bracket(weight_arg), 2.0 * b);
      sum += weight * std::norm(c[static_cast<size_t>(m) * w.n_x + l]);
    }
  }
  return std::sqrt(sum);
}

namespace {

void require_matching_axis(const SpectralField& f, const Window& win, const char* who) {
  if (f.grid.n != win.n_x || f.grid.period != win.L)
    throw std::invalid_argument(std::string(who) + ": field grid does not match window x-axis");
}

// Samples of the mover f(x - sign*t) at time t.
std::vector<cplx> mover_samples(const SpectralField& f, int sign, double t) {
  SpectralField shifted = f;
  const double mu = t / f.grid.period;
  for (int i = 0; i < f.grid.n; ++i) {
    cplx ph = detail::unit_phase(f.grid.wavenumber(i), mu);  // e^{+i xi t}
    shifted.coeff[i] *= sign > 0 ? std::conj(ph) : ph;
  }
  return shifted.to_samples();
}

}  // namespace

SpacetimeField tapered_free_mover(const SpectralField& f, int sign, const Window& win) {
  require_matching_axis(f, win, "tapered_free_mover");
  SpacetimeField out(win);
  for (int j = 0; j < win.n_t; ++j) {
    auto s = mover_samples(f, sign, j * win.dt());
    std::copy(s.begin(), s.end(), out.row(j).begin());
  }
  out.apply_time_taper();
  return out;
}

SpacetimeField tapered_free_wave(const WaveState& data, const Window& win) {
  require_matching_axis(data.phi, win, "tapered_free_wave");
  SpacetimeField out(win);
  for (int j = 0; j < win.n_t; ++j) {
    WaveState w = free_wave_evolve(data, j * win.dt() - data.t);
    auto s = w.phi.to_samples();
    std::copy(s.begin(), s.end(), out.row(j).begin());
  }
  out.apply_time_taper();
  return out;
}

namespace {

// Relative mass of f outside [lo, hi] (periodic coordinates in [0, L)).
double mass_outside(const SpectralField& f, double lo, double hi) {
  auto s = f.to_samples();
  double inside = 0.0, total = 0.0;
  for (int j = 0; j < f.grid.n; ++j) {
    double x = j * f.grid.dx();
    double m = std::norm(s[j]);
    total += m;
    if (x >= lo && x <= hi) inside += m;
  }
  if (total == 0.0) return 0.0;
  return (total - inside) / total;
}

void check_mover_support(const SpectralField& f, int sign, const Window& win, const char* name) {
  const double margin = 2.0 * win.dx();
  double lo, hi;
  if (sign > 0) {  // moves right by T_w
    lo = margin;
    hi = win.L - win.T_w - margin;
  } else {  // moves left by T_w
    lo = win.T_w + margin;
    hi = win.L - margin;
  }
  if (hi <= lo || mass_outside(f, lo, hi) > 1e-8)
    throw WindowError(std::string("free_wave_product_ratio: ") + name +
                      " would cross the periodic seam during the window");
}

}  // namespace

double free_wave_product_ratio(const SpectralField& f, const SpectralField& g, const Window& win,
                               int sign_f, int sign_g) {
  require_matching_axis(f, win, "free_wave_product_ratio");
  require_matching_axis(g, win, "free_wave_product_ratio");
  double nf = l2_norm(f), ng = l2_norm(g);
  if (nf == 0.0 || ng == 0.0) return std::numeric_limits<double>::quiet_NaN();
  check_mover_support(f, sign_f, win, "f");
  check_mover_support(g, sign_g, win, "g");

  const double dt = win.dt(), dx = win.dx();
  double sum = 0.0;
  for (int j = 0; j < win.n_t; ++j) {
    double t = (j + 0.5) * dt;  // midpoint rule in time
    auto u = mover_samples(f, sign_f, t);
    auto v = mover_samples(g, sign_g, t);
    double rowsum = 0.0;
    for (int k = 0; k < win.n_x; ++k) rowsum += std::norm(u[k] * v[k]);
    sum += rowsum;
  }
  return std::sqrt(sum * dt * dx) / (nf * ng);
}

AlgebraicCheck algebraic_inequality_check(const ModePoint& p) {
  AlgebraicCheck c;
  double A = std::abs(p.tau) - std::abs(p.xi);
  double Bp = p.lambda + p.eta;
  double Cm = (p.lambda - p.tau) - (p.eta - p.xi);
  c.lhs = std::min(std::abs(p.eta), std::abs(p.eta - p.xi));
  c.rhs = 1.5 * std::max({std::abs(A), std::abs(Bp), std::abs(Cm)});
  c.holds = c.lhs <= c.rhs + 1e-12;
  return c;
}

namespace {

void record_violation(AlgebraicFuzzReport& rep, const ModePoint& p) {
  if (rep.violations.size() < 16) rep.violations.push_back(p);
}

}  // namespace

AlgebraicFuzzReport fuzz_algebraic_inequality(std::uint64_t seed, long trials, double range) {
  detail::SeededUniform rng(seed);
  AlgebraicFuzzReport rep;
  rep.trials = trials;
  auto draw = [&]() { return range * (2.0 * rng.next() - 1.0); };
  for (long i = 0; i < trials; ++i) {
    ModePoint p{draw(), draw(), draw(), draw()};
    if (!algebraic_inequality_check(p).holds) record_violation(rep, p);
  }
  return rep;
}

AlgebraicFuzzReport boundary_sweep_algebraic(std::uint64_t seed, long per_family, double range) {
  detail::SeededUniform rng(seed);
  AlgebraicFuzzReport rep;
  rep.trials = 3 * per_family;
  auto draw = [&]() { return range * (2.0 * rng.next() - 1.0); };
  for (long i = 0; i < per_family; ++i) {
    // A = |tau| - |xi| = 0
    ModePoint pa;
    pa.xi = draw();
    pa.lambda = draw();
    pa.eta = draw();
    pa.tau = (i % 2 == 0 ? 1.0 : -1.0) * std::abs(pa.xi);
    if (!algebraic_inequality_check(pa).holds) record_violation(rep, pa);
    // B+ = lambda + eta = 0
    ModePoint pb;
    pb.tau = draw();
    pb.xi = draw();
    pb.eta = draw();
    pb.lambda = -pb.eta;
    if (!algebraic_inequality_check(pb).holds) record_violation(rep, pb);
    // C- = (lambda - tau) - (eta - xi) = 0
    ModePoint pc;
    pc.tau = draw();
    pc.xi = draw();
    pc.eta = draw();
    pc.lambda = pc.tau + pc.eta - pc.xi;
    if (!algebraic_inequality_check(pc).holds) record_violation(rep, pc);
  }
  return rep;
}

namespace {

double product_ratio(const SpectralField& f, const SpectralField& g, double a, double b,
                     double c) {
  auto fs = f.to_samples();
  auto gs = g.to_samples();
  std::vector<cplx> prod(fs.size());
  for (size_t j = 0; j < fs.size(); ++j) prod[j] = fs[j] * gs[j];
  SpectralField fg = SpectralField::from_samples(f.grid, prod);
  double denom = sobolev_norm(f, a) * sobolev_norm(g, b);
  if (denom == 0.0) return 0.0;
  return sobolev_norm(fg, -c) / denom;
}

// Phase-aligned block of |k| in [start, start + width): a sharp packet in
// physical space whose bandwidth scales with the grid.
SpectralField aligned_block(const Grid& g, int start, int width) {
  SpectralField f(g);
  for (int k = start; k < start + width && k < g.n / 2; ++k) f.coeff[k] = cplx{1.0, 0.0};
  return f;
}

double probe_max_ratio(const Grid& g, double a, double b, double c, int trials,
                       std::uint64_t seed) {
  double max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t s = seed + 0x9e37ULL * static_cast<std::uint64_t>(t);
    SpectralField f(g), gg(g);
    if (t % 2 == 0) {
      detail::SeededUniform rng(s);
      double decay_f = 1.5 * rng.next();
      double decay_g = 1.5 * rng.next();
      f = random_complex_field(g, s + 1, decay_f);
      gg = random_complex_field(g, s + 2, decay_g);
    } else {
      detail::SeededUniform rng(s);
      int width = g.n / 4;
      int start_f = static_cast<int>(rng.next() * (g.n / 2 - width - 1));
      int start_g = static_cast<int>(rng.next() * (g.n / 2 - width - 1));
      f = aligned_block(g, start_f, width);
      gg = aligned_block(g, start_g, width);
    }
    max_ratio = std::max(max_ratio, product_ratio(f, gg, a, b, c));
  }
  return max_ratio;
}

}  // namespace

ProductLawResult product_law_probe(double a, double b, double c, int trials, const Grid& base,
                                   std::uint64_t seed) {
  if (trials < 100) throw std::invalid_argument("product_law_probe: need trials >= 100");
  ProductLawResult res;
  Grid doubled(base.period, base.n * 2);
  res.max_ratio_base = probe_max_ratio(base, a, b, c, trials, seed);
  res.max_ratio_doubled = probe_max_ratio(doubled, a, b, c, trials, seed);
  res.stable = res.max_ratio_doubled <= 1.05 * res.max_ratio_base;
  return res;
}

DuhamelProbeResult duhamel_gain_probe(double r, double eps, std::span<const double> dT_list,
                                      const Grid& g, const DuhamelProbeOptions& opts) {
  if (dT_list.size() < 4)
    throw std::invalid_argument("duhamel_gain_probe: need at least 4 interval lengths");
  const double b = 0.5 + eps;

  // Fixed continuum inputs: Phi a free wave from rough real data, U a pair of
  // movers dominated by the minus mode (plus a small opposite-sign part).
  WaveState phi_data(g);
  phi_data.phi = random_real_field(g, opts.seed + 11, 0.55, opts.phi_amplitude);
  phi_data.phi_t = random_real_field(g, opts.seed + 12, 1.55, opts.phi_amplitude);
  SpectralField u_minus = random_complex_field(g, opts.seed + 13, 0.5);
  SpectralField u_plus = opts.cross_amplitude * random_complex_field(g, opts.seed + 14, 0.5);

  DuhamelProbeResult res;
  for (double dT : dT_list) {
    Window win(opts.n_t, g.n, dT, g.period, opts.taper_fraction);
    const double dt = win.dt();

    // March (D_t + D_x) a = i Phi aU_- with zero data; row j holds a(t_j).
    SpacetimeField sol(win);
    SpectralField a(g);
    for (int j = 0; j < win.n_t; ++j) {
      auto samp = a.to_samples();
      std::copy(samp.begin(), samp.end(), sol.row(j).begin());
      // advance to t_{j+1}: half shift, midpoint kick, half shift
      SpectralField half = a;
      const double mu = 0.5 * dt / g.period;
      for (int i = 0; i < g.n; ++i)
        half.coeff[i] *= std::conj(detail::unit_phase(g.wavenumber(i), mu));
      double t_mid = (j + 0.5) * dt;
      WaveState phi_mid = free_wave_evolve(phi_data, t_mid);
      auto phi_s = phi_mid.phi.to_real_samples();
      auto um = mover_samples(u_minus, -1, t_mid);
      auto hs = half.to_samples();
      for (int i = 0; i < g.n; ++i) hs[i] += dt * cplx{0.0, 1.0} * phi_s[i] * um[i];
      half = SpectralField::from_samples(g, hs);
      for (int i = 0; i < g.n; ++i)
        half.coeff[i] *= std::conj(detail::unit_phase(g.wavenumber(i), mu));
      a = half;
    }
    sol.apply_time_taper();

    SpacetimeField phi_win = tapered_free_wave(phi_data, win);
    SpacetimeField up_win = tapered_free_mover(u_plus, +1, win);
    SpacetimeField um_win = tapered_free_mover(u_minus, -1, win);

    double num = spacetime_norm(sol, 0.0, b, NormFlavor::Xplus);
    double phi_norm = spacetime_norm(phi_win, r, b, NormFlavor::H);
    double u_norm = std::sqrt(std::pow(spacetime_norm(up_win, 0.0, b, NormFlavor::Xminus), 2) +
                              std::pow(spacetime_norm(um_win, 0.0, b, NormFlavor::Xminus), 2));
    res.dts.push_back(dT);
    if (phi_norm == 0.0 || u_norm == 0.0 || num == 0.0) {
      res.ratios.push_back(0.0);
      res.degenerate = true;
    } else {
      res.ratios.push_back(num / (phi_norm * u_norm));
    }
  }

  if (!res.degenerate) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < res.dts.size(); ++i) {
      lx.push_back(std::log(res.dts[i]));
      ly.push_back(std::log(res.ratios[i]));
    }
    LineFit fit = fit_line(lx, ly);
    res.slope = fit.slope;
    res.residual = fit.rms_residual;
  }
  return res;
}

std::string duhamel_csv(const DuhamelProbeResult& result) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out = "dT,ratio,slope,residual\n";
  for (size_t i = 0; i < result.dts.size(); ++i) {
    out += fmt(result.dts[i]) + "," + fmt(result.ratios[i]) + "," + fmt(result.slope) + "," +
           fmt(result.residual) + "\n";
  }
  return out;
}

std::string violations_json(const AlgebraicFuzzReport& report) {
  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out = "[";
  for (size_t i = 0; i < report.violations.size(); ++i) {
    const ModePoint& p = report.violations[i];
    if (i) out += ",";
    out += "{\"tau\":" + fmt(p.tau) + ",\"xi\":" + fmt(p.xi) + ",\"lambda\":" + fmt(p.lambda) +
           ",\"eta\":" + fmt(p.eta) + "}";
  }
  out += "]";
  return out;
}

}  // namespace dkg
