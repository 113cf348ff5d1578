#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dkg/spectral_field.hpp"
#include "dkg/wave.hpp"

namespace dkg {

/// Space-time sampling window [0, T_w) x [0, L) with a smooth time taper.
/// The taper ramps over taper_fraction * T_w at each end (cosine ramps) and
/// equals 1 on the remainder; at the default fraction 1/4 that is exactly the
/// middle half of the window.
struct Window {
  int n_t;
  int n_x;
  double T_w;
  double L;
  double taper_fraction = 0.25;

  Window(int n_t_, int n_x_, double T_w_, double L_, double taper_fraction_ = 0.25);

  double dt() const { return T_w / n_t; }
  double dx() const { return L / n_x; }
  int tau_wavenumber(int m) const { return m <= n_t / 2 ? m : m - n_t; }
  int xi_wavenumber(int l) const { return l <= n_x / 2 ? l : l - n_x; }
  double tau(int m) const;
  double xi(int l) const;
};

double time_taper(const Window& win, double t);

/// Complex field sampled on the window, row-major in (t, x). Norms require
/// the time taper to have been applied.
class SpacetimeField {
 public:
  explicit SpacetimeField(const Window& win);

  const Window& window() const { return win_; }
  cplx& at(int j, int k) { return values_[static_cast<size_t>(j) * win_.n_x + k]; }
  const cplx& at(int j, int k) const { return values_[static_cast<size_t>(j) * win_.n_x + k]; }
  std::span<cplx> row(int j) { return {values_.data() + static_cast<size_t>(j) * win_.n_x,
                                        static_cast<size_t>(win_.n_x)}; }

  void apply_time_taper();
  bool tapered() const { return tapered_; }

  /// Norm-calibrated 2D mode coefficients c(tau, xi) (sqrt(dt dx) times the
  /// unitary transform), row-major in (tau index, xi index).
  std::vector<cplx> mode_coefficients() const;

  /// Windowed L2 norm by direct quadrature of the samples.
  double l2_quadrature() const;

 private:
  Window win_;
  std::vector<cplx> values_;
  bool tapered_ = false;
};

enum class NormFlavor { H, Xplus, Xminus };

/// Weighted l2 of the 2D transform: weight <xi>^a <|tau|-|xi|>^b for H and
/// <xi>^a <tau +- xi>^b for X_pm. a = b = 0 is the windowed L2 norm.
/// The field must be tapered (windowed restriction-norm surrogate: this is
/// the norm of one canonical extension, an upper-bound stand-in).
double spacetime_norm(const SpacetimeField& f, double a, double b, NormFlavor flavor);

/// Free mover sampled on the window, tapered: sign +1 gives u(t,x) = f(x-t)
/// (the (D_t + D_x) flow), sign -1 gives f(x+t). f must live on a grid
/// matching the window's spatial axis.
SpacetimeField tapered_free_mover(const SpectralField& f, int sign, const Window& win);

/// Free wave phi(t, x) from (phi, phi_t) data, sampled and tapered.
SpacetimeField tapered_free_wave(const WaveState& data, const Window& win);

/// ||u v||_{L2(window)} / (||f|| ||g||) for the movers u = f(x - s1 t),
/// v = g(x - s2 t), by direct quadrature with midpoint time sampling.
/// Opposite signs (default) probe the null-form estimate: the full-plane
/// value for compact supports is 2^{-1/2}, and sqrt(2) bounds it. Returns
/// NaN if either factor vanishes. Throws WindowError if more than 1e-8 of
/// either factor's mass would cross the periodic seam during [0, T_w].
double free_wave_product_ratio(const SpectralField& f, const SpectralField& g, const Window& win,
                               int sign_f = +1, int sign_g = -1);

/// Convolution-variable sample point of the bilinear estimates.
struct ModePoint {
  double tau = 0.0, xi = 0.0, lambda = 0.0, eta = 0.0;
};

struct AlgebraicCheck {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
};

/// min(|eta|, |eta - xi|) <= (3/2) max(|A|, |B+|, |C-|) with
/// A = |tau| - |xi|, B+ = lambda + eta, C- = (lambda - tau) - (eta - xi).
AlgebraicCheck algebraic_inequality_check(const ModePoint& p);

struct AlgebraicFuzzReport {
  long trials = 0;
  std::vector<ModePoint> violations;  // capped at 16 stored
};

AlgebraicFuzzReport fuzz_algebraic_inequality(std::uint64_t seed, long trials,
                                              double range = 1e3);

/// Deterministic boundary families: each of A, B+, C- pinned to zero in turn
/// with the remaining coordinates randomized.
AlgebraicFuzzReport boundary_sweep_algebraic(std::uint64_t seed, long per_family,
                                             double range = 1e3);

struct ProductLawResult {
  double max_ratio_base = 0.0;
  double max_ratio_doubled = 0.0;
  bool stable = false;  // doubled max within 5% of the base max
};

/// max over generated pairs of ||fg||_{H^{-c}} / (||f||_{H^a} ||g||_{H^b})
/// at resolutions n and 2n. The generator mixes random-phase power-law
/// fields with phase-aligned packets whose bandwidth scales with the grid,
/// so inadmissible exponent triples show up as growth under doubling.
/// Requires trials >= 100.
ProductLawResult product_law_probe(double a, double b, double c, int trials, const Grid& base,
                                   std::uint64_t seed);

struct DuhamelProbeOptions {
  int n_t = 256;
  double phi_amplitude = 1.0;
  double cross_amplitude = 0.2;  // off-cone contamination of U
  double taper_fraction = 0.25;
  std::uint64_t seed = 1;
};

struct DuhamelProbeResult {
  std::vector<double> dts;
  std::vector<double> ratios;
  double slope = 0.0;
  double residual = 0.0;
  bool degenerate = false;
};

/// Solves (D_t + D_x) u = Phi beta U on [0, dT] with zero data for each dT
/// (fixed seeded Phi and U built from free waves), and fits the windowed
/// ratio ||u||_{X+^{0,b}} / (||Phi||_{H^{r,b}} ||U||_{X-^{0,b}}) against dT
/// on a log-log scale; b = 1/2 + eps. Exploratory surrogate: reported, not
/// asserted against any exponent. Needs >= 4 geometrically spaced dT values.
DuhamelProbeResult duhamel_gain_probe(double r, double eps, std::span<const double> dT_list,
                                      const Grid& g, const DuhamelProbeOptions& opts = {});

/// CSV with header "dT,ratio,slope,residual" (slope and residual repeated
/// per row for flat ingestion).
std::string duhamel_csv(const DuhamelProbeResult& result);

/// JSON array of violating mode points, each with the full (tau, xi, lambda,
/// eta) tuple for reproduction; empty array when the inequality held.
std::string violations_json(const AlgebraicFuzzReport& report);

}  // namespace dkg
