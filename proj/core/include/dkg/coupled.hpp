#pragma once

#include <utility>
#include <vector>

#include "dkg/dirac.hpp"
#include "dkg/wave.hpp"

namespace dkg {

struct SolverOptions {
  /// 2/3-rule truncation of the quadratic sources (the sampled potential and
  /// the bilinear density) before they enter a step. The spinor spectrum
  /// itself is never truncated, keeping charge conservation exact.
  bool dealias = true;
};

/// Uniformly sampled run history. Snapshot i is at times[i]; spinors and
/// waves have equal length and share the grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpinorState> spinors;
  std::vector<WaveState> waves;
  double dt = 0.0;
};

/// One Strang step of the coupled system
///   (D_t + alpha D_x) psi = phi beta psi,  d_t^2 phi - d_x^2 phi = <beta psi, psi>.
/// Composition: half free flows of both fields; at the midpoint the spinor is
/// rotated by the sampled potential over the full dt and d_t phi receives the
/// impulse dt * rho with rho the midpoint bilinear density (rho is invariant
/// under the rotation, so the interaction substep is an exact flow); half
/// free flows. Second order, exactly charge-conserving, and time-reversible:
/// a -dt step undoes a +dt step to rounding.
std::pair<SpinorState, WaveState> dkg_step(const SpinorState& sp, const WaveState& wv, double dt,
                                           const SolverOptions& opts = {});

/// Repeated dkg_step over [t0, t0+T]; snapshots every record_every steps plus
/// the initial and final states. T/dt must be integral to 1e-9 relative.
/// Throws DivergenceError naming the step if a field stops being finite.
Trajectory dkg_solve(const SpinorState& psi0, const WaveState& wave0, double T, double dt,
                     int record_every = 1, const SolverOptions& opts = {});

struct PicardResult {
  Trajectory trajectory;
  int iters = 0;
  /// Successive-difference norms sup_t ||u^(n) - u^(n-1)||_{L2} +
  /// ||w^(n) - w^(n-1)||_{H^r pair}, one entry per completed iteration.
  std::vector<double> diffs;
};

/// Picard iteration for the same system: iterate n+1 solves the linear
/// transport with the frozen previous iterate as source,
///   (D_t +- D_x) u_pm^(n+1) = w^(n) beta u_-+^(n),
/// and w^(n) solves the wave equation driven by u^(n)'s density, both by the
/// split-step integrators. Stops when successive iterates differ by <= tol
/// (sup over step ends, L2 for the spinor and H^r pair for the wave).
/// Throws NonContractionError if max_iters is exhausted.
PicardResult picard_solve(const SpinorState& psi0, const WaveState& wave0, double dT, double dt,
                          int max_iters, double tol, double r, int record_every = 1,
                          const SolverOptions& opts = {});

/// Central-difference substitution of a recorded trajectory into the system;
/// returns sup-in-time L2 residuals (dirac, wave). Needs >= 3 snapshots.
/// O(dt^2) for converged runs.
std::pair<double, double> residual_check(const Trajectory& traj);

namespace detail {

/// Midpoint samples captured during a dkg_step, for co-driven linear systems.
struct StepMids {
  std::vector<cplx> a_plus;       // spinor samples after the first half flow
  std::vector<cplx> a_minus;      // (pre-rotation)
  std::vector<double> potential;  // sampled (dealiased) wave field
};

std::pair<SpinorState, WaveState> dkg_step_capture(const SpinorState& sp, const WaveState& wv,
                                                   double dt, const SolverOptions& opts,
                                                   StepMids* mids);

/// Number of steps for horizon T at size dt; throws unless T/dt is integral.
long step_count(double T, double dt);

std::vector<double> sampled_potential(const SpectralField& phi, bool dealias);

}  // namespace detail
}  // namespace dkg
