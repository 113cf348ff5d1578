#pragma once

#include <array>
#include <span>
#include <utility>

#include "dkg/spectral_field.hpp"

namespace dkg {

using Mat2 = std::array<std::array<cplx, 2>, 2>;

/// The Dirac matrices and the eigenspace projections of alpha*Dx.
/// All entries are exact binary fractions, so the algebraic identities
///   P+^2 = P+, P+P- = P-P+ = 0, alpha = P+ - P-,
///   beta P+ = P- beta, beta P- = P+ beta
/// hold exactly in double arithmetic.
struct ProjectionBasis {
  static Mat2 alpha();
  static Mat2 beta();
  static Mat2 p_plus();
  static Mat2 p_minus();
};

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_sub(const Mat2& a, const Mat2& b);
double mat_max_abs(const Mat2& a);

/// Spinor in the +- eigenbasis of alpha*Dx: amplitudes along the normalized
/// eigenvectors e_pm = (1, +-1)/sqrt(2), so psi = a_plus e+ + a_minus e-.
struct SpinorState {
  SpectralField a_plus;
  SpectralField a_minus;
  double t = 0.0;

  explicit SpinorState(const Grid& g) : a_plus(g), a_minus(g) {}
  SpinorState(SpectralField ap, SpectralField am, double t_ = 0.0);

  const Grid& grid() const { return a_plus.grid; }
};

/// a_pm = (psi1 +- psi2)/sqrt(2); the round trip with from_eigenbasis is the
/// identity. Components must share a grid.
SpinorState to_eigenbasis(const SpectralField& psi1, const SpectralField& psi2, double t = 0.0);
std::pair<SpectralField, SpectralField> from_eigenbasis(const SpinorState& s);

/// Exact free flow of (D_t + alpha D_x) psi = 0: a_pm(t, x) = a_pm(0, x -+ t),
/// a pure phase e^{-+ i t xi} per mode. Charge is preserved exactly.
SpinorState free_dirac_evolve(const SpinorState& s, double t);

/// Exact flow over dt of the pointwise coupling d/dt a_pm = i w a_-+ :
/// the rotation (a+, a-) <- [[cos th, i sin th], [i sin th, cos th]](a+, a-)
/// with th = w(x) dt. Pointwise unitary, so charge is conserved exactly.
SpinorState potential_substep(const SpinorState& s, std::span<const double> w_samples, double dt);

/// Strang step free(dt/2) o potential(dt) o free(dt/2) with w sampled at the
/// half step. Globally second order; charge exactly conserved.
SpinorState dirac_strang_step(const SpinorState& s, std::span<const double> w_mid, double dt);

/// ||psi||_{L2}^2 = ||a+||^2 + ||a-||^2.
double charge(const SpinorState& s);

/// <beta psi, psi> = |psi1|^2 - |psi2|^2 = 2 Re(a+ conj(a-)), as real samples.
std::vector<double> bilinear_density(const SpinorState& s);

}  // namespace dkg
