#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dkg {

using cplx = std::complex<double>;

enum class Direction { Forward, Inverse };

/// Unitary discrete Fourier transform (1/sqrt(n) on both directions),
/// so forward followed by inverse is the identity to rounding.
/// Forward convention: X_k = n^{-1/2} sum_j x_j exp(-2*pi*i*j*k/n).
std::vector<cplx> spectral_transform(std::span<const cplx> samples, Direction dir);

namespace detail {

/// In-place-capable unitary FFT; out may alias in. Thread-safe (plans cached
/// under a lock, execution re-entrant).
void fft_unitary(std::span<const cplx> in, std::span<cplx> out, Direction dir);

/// Unitary 2D FFT of a row-major n_rows x n_cols array.
void fft2_unitary(std::span<const cplx> in, std::span<cplx> out, int n_rows, int n_cols,
                  Direction dir);

/// exp(2*pi*i * frac(k*mu)) with the angle reduced before the trig call, so
/// whole-period arguments (k*mu integral) give exactly 1.
cplx unit_phase(long k, double mu);

}  // namespace detail
}  // namespace dkg
