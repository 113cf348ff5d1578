#include "dkg/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace dkg {

namespace {
constexpr double kHalf = 0.5;
constexpr double kRoot2Inv = 0.70710678118654752440;
}  // namespace

Mat2 ProjectionBasis::alpha() { return {{{cplx{0}, cplx{1}}, {cplx{1}, cplx{0}}}}; }
Mat2 ProjectionBasis::beta() { return {{{cplx{1}, cplx{0}}, {cplx{0}, cplx{-1}}}}; }
Mat2 ProjectionBasis::p_plus() {
  return {{{cplx{kHalf}, cplx{kHalf}}, {cplx{kHalf}, cplx{kHalf}}}};
}
Mat2 ProjectionBasis::p_minus() {
  return {{{cplx{kHalf}, cplx{-kHalf}}, {cplx{-kHalf}, cplx{kHalf}}}};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

Mat2 mat_sub(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

double mat_max_abs(const Mat2& a) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j]));
  return m;
}

SpinorState::SpinorState(SpectralField ap, SpectralField am, double t_)
    : a_plus(std::move(ap)), a_minus(std::move(am)), t(t_) {
  if (!(a_plus.grid == a_minus.grid))
    throw std::invalid_argument("SpinorState: component grids differ");
}

SpinorState to_eigenbasis(const SpectralField& psi1, const SpectralField& psi2, double t) {
  if (!(psi1.grid == psi2.grid)) throw std::invalid_argument("to_eigenbasis: grid mismatch");
  SpectralField ap(psi1.grid), am(psi1.grid);
  for (int i = 0; i < psi1.grid.n; ++i) {
    ap.coeff[i] = (psi1.coeff[i] + psi2.coeff[i]) * kRoot2Inv;
    am.coeff[i] = (psi1.coeff[i] - psi2.coeff[i]) * kRoot2Inv;
  }
  return SpinorState(std::move(ap), std::move(am), t);
}

std::pair<SpectralField, SpectralField> from_eigenbasis(const SpinorState& s) {
  SpectralField psi1(s.grid()), psi2(s.grid());
  for (int i = 0; i < s.grid().n; ++i) {
    psi1.coeff[i] = (s.a_plus.coeff[i] + s.a_minus.coeff[i]) * kRoot2Inv;
    psi2.coeff[i] = (s.a_plus.coeff[i] - s.a_minus.coeff[i]) * kRoot2Inv;
  }
  return {std::move(psi1), std::move(psi2)};
}

SpinorState free_dirac_evolve(const SpinorState& s, double t) {
  SpinorState out = s;
  out.t = s.t + t;
  const double mu = t / s.grid().period;
  for (int i = 0; i < s.grid().n; ++i) {
    long k = s.grid().wavenumber(i);
    // a+(t) = e^{-i t xi} a+(0); a-(t) = e^{+i t xi} a-(0)
    cplx ph = detail::unit_phase(k, mu);  // e^{+ 2 pi i k mu} = e^{+ i t xi}
    out.a_plus.coeff[i] = s.a_plus.coeff[i] * std::conj(ph);
    out.a_minus.coeff[i] = s.a_minus.coeff[i] * ph;
  }
  return out;
}

SpinorState potential_substep(const SpinorState& s, std::span<const double> w_samples,
                              double dt) {
  if (static_cast<int>(w_samples.size()) != s.grid().n)
    throw std::invalid_argument("potential_substep: w sample count does not match grid");
  auto ap = s.a_plus.to_samples();
  auto am = s.a_minus.to_samples();
  for (int j = 0; j < s.grid().n; ++j) {
    double th = w_samples[j] * dt;
    double c = std::cos(th), si = std::sin(th);
    cplx p = ap[j], m = am[j];
    ap[j] = c * p + cplx{0.0, si} * m;
    am[j] = cplx{0.0, si} * p + c * m;
  }
  return SpinorState(SpectralField::from_samples(s.grid(), ap),
                     SpectralField::from_samples(s.grid(), am), s.t);
}

SpinorState dirac_strang_step(const SpinorState& s, std::span<const double> w_mid, double dt) {
  SpinorState half = free_dirac_evolve(s, 0.5 * dt);
  SpinorState kicked = potential_substep(half, w_mid, dt);
  return free_dirac_evolve(kicked, 0.5 * dt);
}

double charge(const SpinorState& s) {
  double sum = 0.0;
  for (const auto& c : s.a_plus.coeff) sum += std::norm(c);
  for (const auto& c : s.a_minus.coeff) sum += std::norm(c);
  return sum;
}

std::vector<double> bilinear_density(const SpinorState& s) {
  auto ap = s.a_plus.to_samples();
  auto am = s.a_minus.to_samples();
  std::vector<double> rho(ap.size());
  for (size_t j = 0; j < ap.size(); ++j) rho[j] = 2.0 * (ap[j] * std::conj(am[j])).real();
  return rho;
}

}  // namespace dkg
