#include "dkg/rough_data.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dkg/fields.hpp"

namespace dkg {

double rough_magnitude(double xi, double s, double amplitude) {
  double br = bracket(xi);
  return amplitude * std::pow(br, s - 0.5) / (1.0 + std::log(br));
}

std::pair<SpectralField, SpectralField> make_rough_spinor(const RoughDataProfile& profile,
                                                          const Grid& grid) {
  if (!(profile.s > 0.0 && profile.s < 0.5))
    throw std::invalid_argument("make_rough_spinor: s must lie in (0, 1/2)");
  detail::SeededUniform rng(profile.seed);
  auto component = [&]() {
    SpectralField f(grid);
    for (int i = 0; i < grid.n; ++i) {
      double mag = rough_magnitude(grid.mode(i), profile.s, profile.amplitude);
      double ph = 2.0 * std::numbers::pi * rng.next();
      f.coeff[i] = mag * cplx{std::cos(ph), std::sin(ph)};
    }
    return f;
  };
  SpectralField psi1 = component();
  SpectralField psi2 = component();
  return {std::move(psi1), std::move(psi2)};
}

}  // namespace dkg
