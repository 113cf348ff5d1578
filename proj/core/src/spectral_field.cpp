#include "dkg/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkg {

SpectralField::SpectralField(const Grid& g, std::vector<cplx> c) : grid(g), coeff(std::move(c)) {
  if (static_cast<int>(coeff.size()) != g.n)
    throw std::invalid_argument("SpectralField: coefficient count does not match grid");
}

SpectralField SpectralField::from_samples(const Grid& g, std::span<const cplx> samples) {
  if (static_cast<int>(samples.size()) != g.n)
    throw std::invalid_argument("SpectralField::from_samples: sample count does not match grid");
  SpectralField f(g);
  detail::fft_unitary(samples, f.coeff, Direction::Forward);
  const double root_dx = std::sqrt(g.dx());
  for (auto& c : f.coeff) c *= root_dx;
  return f;
}

SpectralField SpectralField::from_real_samples(const Grid& g, std::span<const double> samples) {
  std::vector<cplx> buf(samples.size());
  std::transform(samples.begin(), samples.end(), buf.begin(),
                 [](double x) { return cplx{x, 0.0}; });
  return from_samples(g, buf);
}

std::vector<cplx> SpectralField::to_samples() const {
  std::vector<cplx> out(coeff.size());
  const double inv_root_dx = 1.0 / std::sqrt(grid.dx());
  std::transform(coeff.begin(), coeff.end(), out.begin(),
                 [inv_root_dx](cplx c) { return c * inv_root_dx; });
  detail::fft_unitary(out, out, Direction::Inverse);
  return out;
}

std::vector<double> SpectralField::to_real_samples(double tol) const {
  auto s = to_samples();
  double max_abs = 0.0, max_imag = 0.0;
  for (const auto& v : s) {
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > tol * std::max(1.0, max_abs))
    throw std::invalid_argument("to_real_samples: field is not real-valued");
  std::vector<double> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [](cplx v) { return v.real(); });
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!(grid == o.grid)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!(grid == o.grid)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& x : coeff) x *= c;
  return *this;
}

double sobolev_norm(const SpectralField& f, double a) {
  double sum = 0.0;
  if (a == 0.0) {
    for (const auto& c : f.coeff) sum += std::norm(c);
  } else {
    const double two_a = 2.0 * a;
    for (int i = 0; i < f.grid.n; ++i)
      sum += std::pow(bracket(f.grid.mode(i)), two_a) * std::norm(f.coeff[i]);
  }
  return std::sqrt(sum);
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& f, double N) {
  if (!(N > 0.0)) throw std::invalid_argument("frequency_split: cutoff N must be positive");
  SpectralField low(f.grid), high(f.grid);
  for (int i = 0; i < f.grid.n; ++i) {
    if (std::abs(f.grid.mode(i)) <= N)
      low.coeff[i] = f.coeff[i];
    else
      high.coeff[i] = f.coeff[i];
  }
  return {std::move(low), std::move(high)};
}

SpectralField dealias_two_thirds(const SpectralField& f) {
  SpectralField out = f;
  dealias_two_thirds_inplace(out);
  return out;
}

void dealias_two_thirds_inplace(SpectralField& f) {
  const int kmax = f.grid.n / 3;
  for (int i = 0; i < f.grid.n; ++i) {
    int k = f.grid.wavenumber(i);
    if (k > kmax || k < -kmax) f.coeff[i] = cplx{0.0, 0.0};
  }
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("l2_distance: grid mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < a.coeff.size(); ++i) sum += std::norm(a.coeff[i] - b.coeff[i]);
  return std::sqrt(sum);
}

}  // namespace dkg
