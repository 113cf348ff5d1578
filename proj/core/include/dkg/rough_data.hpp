#pragma once

#include <cstdint>
#include <utility>

#include "dkg/spectral_field.hpp"

namespace dkg {

/// Recipe for spinor data at regularity exactly -s.
///
/// Coefficient magnitudes follow |c(xi)| = amplitude * <xi>^(s-1/2) / (1+log<xi>)
/// with uniformly random phases per component. The log correction places the
/// field on the H^{-s} borderline: the H^{-s} norm converges as n grows while
/// any H^{-s'} norm with s' < s diverges.
struct RoughDataProfile {
  double s;
  std::uint64_t seed;
  double amplitude = 1.0;
};

/// Deterministic in (seed, grid). Returns the two spinor components
/// (psi1, psi2). Requires 0 < s < 1/2.
std::pair<SpectralField, SpectralField> make_rough_spinor(const RoughDataProfile& profile,
                                                          const Grid& grid);

/// The magnitude law above, exposed for oracle-style norm computations.
double rough_magnitude(double xi, double s, double amplitude);

}  // namespace dkg
