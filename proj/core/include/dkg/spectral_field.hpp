#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "dkg/fourier.hpp"
#include "dkg/grid.hpp"

namespace dkg {

/// A field on the periodic grid, stored as mode coefficients c(xi).
///
/// Coefficients are calibrated to the continuum torus norms: for samples f_j
/// the coefficient is c(xi) = sqrt(dx) * (unitary DFT), so that
///   ||f||_{L2(0,L)}^2 = sum_xi |c(xi)|^2
/// and a pure mode exp(i*xi0*x) has |c(xi0)| = sqrt(L).
struct SpectralField {
  Grid grid;
  std::vector<cplx> coeff;

  explicit SpectralField(const Grid& g) : grid(g), coeff(g.n, cplx{0.0, 0.0}) {}
  SpectralField(const Grid& g, std::vector<cplx> c);

  static SpectralField from_samples(const Grid& g, std::span<const cplx> samples);
  static SpectralField from_real_samples(const Grid& g, std::span<const double> samples);

  std::vector<cplx> to_samples() const;

  /// Physical samples asserted real: throws if the relative imaginary residue
  /// exceeds tol.
  std::vector<double> to_real_samples(double tol = 1e-10) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double c);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double c, SpectralField a) { return a *= c; }
};

/// (sum_xi <xi>^{2a} |c(xi)|^2)^{1/2}; a = 0 is the L2 norm (Parseval).
double sobolev_norm(const SpectralField& f, double a);

double l2_norm(const SpectralField& f);

/// Exact partition at cutoff N: low keeps |xi| <= N, high the rest.
/// N must be positive.
std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& f, double N);

/// 2/3-rule dealiasing: zero all modes with |k| > n/3.
SpectralField dealias_two_thirds(const SpectralField& f);
void dealias_two_thirds_inplace(SpectralField& f);

/// L2 distance between two fields on the same grid.
double l2_distance(const SpectralField& a, const SpectralField& b);

}  // namespace dkg
