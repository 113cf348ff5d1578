#include "dkg/coupled.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "dkg/errors.hpp"

namespace dkg {

namespace detail {

long step_count(double T, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_count: dt must be positive");
  if (T < 0.0) throw std::invalid_argument("step_count: T must be nonnegative");
  double raw = T / dt;
  long steps = std::lround(raw);
  if (std::abs(raw - steps) > 1e-9 * std::max(1.0, raw))
    throw std::invalid_argument("step_count: T is not an integral number of steps");
  return steps;
}

std::vector<double> sampled_potential(const SpectralField& phi, bool dealias) {
  if (!dealias) return phi.to_real_samples();
  return dealias_two_thirds(phi).to_real_samples();
}

std::pair<SpinorState, WaveState> dkg_step_capture(const SpinorState& sp, const WaveState& wv,
                                                   double dt, const SolverOptions& opts,
                                                   StepMids* mids) {
  if (!(sp.grid() == wv.grid())) throw std::invalid_argument("dkg_step: grid mismatch");

  SpinorState sp_mid = free_dirac_evolve(sp, 0.5 * dt);
  WaveState wv_mid = free_wave_evolve(wv, 0.5 * dt);

  std::vector<double> w_samples = sampled_potential(wv_mid.phi, opts.dealias);
  std::vector<double> rho = bilinear_density(sp_mid);
  SpectralField rho_hat = SpectralField::from_real_samples(sp.grid(), rho);
  if (opts.dealias) dealias_two_thirds_inplace(rho_hat);

  if (mids) {
    mids->a_plus = sp_mid.a_plus.to_samples();
    mids->a_minus = sp_mid.a_minus.to_samples();
    mids->potential = w_samples;
  }

  SpinorState sp_rot = potential_substep(sp_mid, w_samples, dt);
  wv_mid.phi_t += dt * rho_hat;

  return {free_dirac_evolve(sp_rot, 0.5 * dt), free_wave_evolve(wv_mid, 0.5 * dt)};
}

}  // namespace detail

std::pair<SpinorState, WaveState> dkg_step(const SpinorState& sp, const WaveState& wv, double dt,
                                           const SolverOptions& opts) {
  return detail::dkg_step_capture(sp, wv, dt, opts, nullptr);
}

namespace {

bool finite_state(const SpinorState& sp, const WaveState& wv) {
  double q = charge(sp);
  double e = 0.0;
  for (const auto& c : wv.phi.coeff) e += std::norm(c);
  for (const auto& c : wv.phi_t.coeff) e += std::norm(c);
  return std::isfinite(q) && std::isfinite(e);
}

}  // namespace

Trajectory dkg_solve(const SpinorState& psi0, const WaveState& wave0, double T, double dt,
                     int record_every, const SolverOptions& opts) {
  if (record_every < 1) throw std::invalid_argument("dkg_solve: record_every must be >= 1");
  long steps = detail::step_count(T, dt);
  Trajectory traj;
  traj.dt = dt;
  SpinorState sp = psi0;
  WaveState wv = wave0;
  traj.times.push_back(sp.t);
  traj.spinors.push_back(sp);
  traj.waves.push_back(wv);
  for (long k = 0; k < steps; ++k) {
    std::tie(sp, wv) = dkg_step(sp, wv, dt, opts);
    if (!finite_state(sp, wv))
      throw DivergenceError("dkg_solve: field diverged at step " + std::to_string(k + 1), k + 1);
    if ((k + 1) % record_every == 0 || k + 1 == steps) {
      traj.times.push_back(sp.t);
      traj.spinors.push_back(sp);
      traj.waves.push_back(wv);
    }
  }
  return traj;
}

namespace {

// Midpoint samples of one Picard iterate, reused as the next iterate's frozen
// source, plus end-of-step snapshots for the convergence metric.
struct IterateHistory {
  std::vector<std::vector<cplx>> ap_mid, am_mid;
  std::vector<std::vector<double>> w_mid;
  std::vector<SpinorState> u_end;
  std::vector<WaveState> w_end;
};

// Linear transport solve for u^(n+1) given the previous iterate's midpoint
// samples; simultaneously records the new iterate's own midpoints.
void picard_spinor_pass(const SpinorState& u0, long steps, double dt, const IterateHistory* prev,
                        IterateHistory& cur) {
  const Grid& g = u0.grid();
  SpinorState u = u0;
  cur.ap_mid.assign(steps, {});
  cur.am_mid.assign(steps, {});
  cur.u_end.clear();
  cur.u_end.reserve(steps);
  for (long k = 0; k < steps; ++k) {
    SpinorState mid = free_dirac_evolve(u, 0.5 * dt);
    auto ap = mid.a_plus.to_samples();
    auto am = mid.a_minus.to_samples();
    cur.ap_mid[k] = ap;
    cur.am_mid[k] = am;
    if (prev) {
      // Duhamel midpoint rule: u <- F(dt) u + dt F(dt/2)[i w beta u]_mid.
      const auto& w = prev->w_mid[k];
      const auto& pap = prev->ap_mid[k];
      const auto& pam = prev->am_mid[k];
      for (int j = 0; j < g.n; ++j) {
        ap[j] += dt * cplx{0.0, 1.0} * w[j] * pam[j];
        am[j] += dt * cplx{0.0, 1.0} * w[j] * pap[j];
      }
    }
    SpinorState kicked(SpectralField::from_samples(g, ap), SpectralField::from_samples(g, am),
                       mid.t);
    u = free_dirac_evolve(kicked, 0.5 * dt);
    cur.u_end.push_back(u);
  }
}

// Forced wave solve for w^(n) driven by the current iterate's density.
void picard_wave_pass(const WaveState& w0, long steps, double dt, const SolverOptions& opts,
                      IterateHistory& cur) {
  const Grid& g = w0.grid();
  WaveState w = w0;
  cur.w_mid.assign(steps, {});
  cur.w_end.clear();
  cur.w_end.reserve(steps);
  for (long k = 0; k < steps; ++k) {
    WaveState mid = free_wave_evolve(w, 0.5 * dt);
    cur.w_mid[k] = detail::sampled_potential(mid.phi, opts.dealias);
    const auto& ap = cur.ap_mid[k];
    const auto& am = cur.am_mid[k];
    std::vector<double> rho(g.n);
    for (int j = 0; j < g.n; ++j) rho[j] = 2.0 * (ap[j] * std::conj(am[j])).real();
    SpectralField rho_hat = SpectralField::from_real_samples(g, rho);
    if (opts.dealias) dealias_two_thirds_inplace(rho_hat);
    mid.phi_t += dt * rho_hat;
    w = free_wave_evolve(mid, 0.5 * dt);
    cur.w_end.push_back(w);
  }
}

double iterate_distance(const IterateHistory& a, const IterateHistory& b, double r) {
  double sup = 0.0;
  for (size_t k = 0; k < a.u_end.size(); ++k) {
    double du = std::sqrt(std::pow(l2_distance(a.u_end[k].a_plus, b.u_end[k].a_plus), 2) +
                          std::pow(l2_distance(a.u_end[k].a_minus, b.u_end[k].a_minus), 2));
    WaveState dw(a.w_end[k].phi - b.w_end[k].phi, a.w_end[k].phi_t - b.w_end[k].phi_t);
    sup = std::max(sup, du + energy_pair_norm(dw, r));
  }
  return sup;
}

}  // namespace

PicardResult picard_solve(const SpinorState& psi0, const WaveState& wave0, double dT, double dt,
                          int max_iters, double tol, double r, int record_every,
                          const SolverOptions& opts) {
  if (!(psi0.grid() == wave0.grid())) throw std::invalid_argument("picard_solve: grid mismatch");
  if (max_iters < 1) throw std::invalid_argument("picard_solve: max_iters must be >= 1");
  long steps = detail::step_count(dT, dt);

  PicardResult result;
  IterateHistory prev, cur;

  // Iterate 0: free transport (the n = -1 iterate vanishes identically).
  // result.iters counts the correction passes beyond this initial guess.
  picard_spinor_pass(psi0, steps, dt, nullptr, cur);
  picard_wave_pass(wave0, steps, dt, opts, cur);

  bool converged = steps == 0;
  while (!converged) {
    std::swap(prev, cur);
    picard_spinor_pass(psi0, steps, dt, &prev, cur);
    picard_wave_pass(wave0, steps, dt, opts, cur);
    ++result.iters;
    double diff = iterate_distance(cur, prev, r);
    result.diffs.push_back(diff);
    if (!std::isfinite(diff))
      throw DivergenceError("picard_solve: iterate diverged", result.iters);
    if (diff <= tol) {
      converged = true;
    } else if (result.iters >= max_iters) {
      throw NonContractionError(
          "picard_solve: no contraction after " + std::to_string(result.iters) +
          " iterations (last diff " + std::to_string(diff) + "); shrink the interval");
    }
  }

  Trajectory traj;
  traj.dt = dt;
  traj.times.push_back(psi0.t);
  traj.spinors.push_back(psi0);
  traj.waves.push_back(wave0);
  for (long k = 0; k < steps; ++k) {
    if ((k + 1) % record_every == 0 || k + 1 == steps) {
      traj.times.push_back(cur.u_end[k].t);
      traj.spinors.push_back(cur.u_end[k]);
      traj.waves.push_back(cur.w_end[k]);
    }
  }
  result.trajectory = std::move(traj);
  return result;
}

std::pair<double, double> residual_check(const Trajectory& traj) {
  const size_t m = traj.times.size();
  if (m < 3) throw std::invalid_argument("residual_check: need at least 3 snapshots");
  const Grid& g = traj.spinors.front().grid();
  const double dx = g.dx();

  auto spatial_derivative = [&](const SpectralField& f) {
    SpectralField d(f.grid);
    for (int i = 0; i < g.n; ++i) d.coeff[i] = cplx{0.0, g.mode(i)} * f.coeff[i];
    return d;
  };
  auto l2_of_samples = [&](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s * dx);
  };

  double dirac_res = 0.0, wave_res = 0.0;
  for (size_t i = 1; i + 1 < m; ++i) {
    double span = traj.times[i + 1] - traj.times[i - 1];
    const SpinorState& s = traj.spinors[i];
    const WaveState& w = traj.waves[i];

    auto w_samp = w.phi.to_real_samples(1e-6);
    auto ap = s.a_plus.to_samples();
    auto am = s.a_minus.to_samples();
    auto dxap = spatial_derivative(s.a_plus).to_samples();
    auto dxam = spatial_derivative(s.a_minus).to_samples();
    SpectralField dtap = (1.0 / span) * (traj.spinors[i + 1].a_plus - traj.spinors[i - 1].a_plus);
    SpectralField dtam =
        (1.0 / span) * (traj.spinors[i + 1].a_minus - traj.spinors[i - 1].a_minus);
    auto dtap_s = dtap.to_samples();
    auto dtam_s = dtam.to_samples();

    std::vector<cplx> rp(g.n), rm(g.n);
    for (int j = 0; j < g.n; ++j) {
      rp[j] = dtap_s[j] + dxap[j] - cplx{0.0, 1.0} * w_samp[j] * am[j];
      rm[j] = dtam_s[j] - dxam[j] - cplx{0.0, 1.0} * w_samp[j] * ap[j];
    }
    dirac_res = std::max(dirac_res,
                         std::sqrt(std::pow(l2_of_samples(rp), 2) + std::pow(l2_of_samples(rm), 2)));

    SpectralField dtphi = (1.0 / span) * (traj.waves[i + 1].phi - traj.waves[i - 1].phi);
    SpectralField dtphit = (1.0 / span) * (traj.waves[i + 1].phi_t - traj.waves[i - 1].phi_t);
    SpectralField dxxphi(g);
    for (int j = 0; j < g.n; ++j) {
      double xi = g.mode(j);
      dxxphi.coeff[j] = -xi * xi * w.phi.coeff[j];
    }
    auto rho = bilinear_density(s);
    SpectralField rho_hat = SpectralField::from_real_samples(g, rho);
    double r1 = l2_norm(dtphi - w.phi_t);
    double r2 = l2_norm(dtphit - dxxphi - rho_hat);
    wave_res = std::max(wave_res, r1 + r2);
  }
  return {dirac_res, wave_res};
}

}  // namespace dkg
