#pragma once

#include <numbers>
#include <stdexcept>

namespace dkg {

/// Periodic spatial domain [0, L) sampled at n equispaced points.
///
/// Fourier modes are xi = 2*pi*k/L for integer wavenumbers
/// k in {-n/2+1, ..., n/2}; the single Nyquist mode k = n/2 has no
/// negative partner. n must be an even power of two.
struct Grid {
  double period;
  int n;

  Grid(double period_, int n_) : period(period_), n(n_) {
    if (!(period > 0.0)) throw std::invalid_argument("Grid: period must be positive");
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Grid: point count must be a power of two >= 2");
  }

  double dx() const { return period / n; }

  /// Integer wavenumber for storage index i in [0, n).
  int wavenumber(int i) const { return i <= n / 2 ? i : i - n; }

  /// Scaled frequency xi = 2*pi*k/L for storage index i.
  double mode(int i) const {
    return 2.0 * std::numbers::pi * wavenumber(i) / period;
  }

  /// Largest represented |xi| (the Nyquist frequency pi*n/L).
  double nyquist() const { return std::numbers::pi * n / period; }

  bool operator==(const Grid&) const = default;
};

/// Japanese bracket <xi> = 1 + |xi|.
inline double bracket(double xi) { return 1.0 + (xi < 0 ? -xi : xi); }

}  // namespace dkg
