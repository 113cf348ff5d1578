#include "dkg/splitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <nlohmann/json.hpp>

#include "dkg/errors.hpp"
#include "dkg/line_fit.hpp"

namespace dkg {

std::vector<ParamViolation> validate_params(double s, double r, double eps) {
  std::vector<ParamViolation> v;
  auto fail = [&](std::string name, std::string detail) {
    v.push_back({std::move(name), std::move(detail)});
  };
  char buf[160];

  if (!(s > 0.0 && s < 0.125)) {
    std::snprintf(buf, sizeof buf, "s in (0, 1/8): s = %g", s);
    fail("s < 1/8", buf);
  }
  double r_lo = s + std::sqrt(s * s + s);
  if (!(r > r_lo)) {
    std::snprintf(buf, sizeof buf, "need r > s + sqrt(s^2+s) = %.9f, got r = %g", r_lo, r);
    fail("r > s + sqrt(s^2+s)", buf);
  }
  if (!(r < 0.5)) {
    std::snprintf(buf, sizeof buf, "need r < 1/2, got r = %g", r);
    fail("r < 1/2", buf);
  }

  // Base exponent conditions (the eps -> 0 limits).
  double e1 = 2 * s - r + s / r;
  double e2 = -0.5 + s / r;
  double e3 = 2 * s - r - 3 * s / (4 * r) + s / r;
  if (!(e1 < 0)) {
    std::snprintf(buf, sizeof buf, "2s - r + s/r = %g must be negative", e1);
    fail("base exponent 1", buf);
  }
  if (!(e2 < 0)) {
    std::snprintf(buf, sizeof buf, "-1/2 + s/r = %g must be negative", e2);
    fail("base exponent 2", buf);
  }
  if (!(e3 < 0)) {
    std::snprintf(buf, sizeof buf, "2s - r - 3s/(4r) + s/r = %g must be negative", e3);
    fail("base exponent 3", buf);
  }

  if (!(eps > 0.0)) {
    std::snprintf(buf, sizeof buf, "eps = %g must be positive", eps);
    fail("eps > 0", buf);
  } else {
    // eps must keep every exponent negative after its explicit +2eps shift.
    if (!(e1 + 2 * eps < 0)) {
      std::snprintf(buf, sizeof buf, "2s - r + s/r + 2eps = %g must stay negative",
                    e1 + 2 * eps);
      fail("eps exponent 1", buf);
    }
    if (!(e2 + 2 * eps < 0)) {
      std::snprintf(buf, sizeof buf, "-1/2 + s/r + 2eps = %g must stay negative", e2 + 2 * eps);
      fail("eps exponent 2", buf);
    }
    if (!(e3 + 2 * eps < 0)) {
      std::snprintf(buf, sizeof buf, "2s - r - 3s/(4r) + s/r + 2eps = %g must stay negative",
                    e3 + 2 * eps);
      fail("eps exponent 3", buf);
    }
    if (!(2 * r - 7 * eps > 0)) {
      std::snprintf(buf, sizeof buf, "2r - 7eps = %g must be positive", 2 * r - 7 * eps);
      fail("2r - 7eps > 0", buf);
    }
  }
  return v;
}

double choose_dt(double s, double r, double eps, double N, double c0) {
  if (!(2.0 * r - 7.0 * eps > 0.0))
    throw std::invalid_argument("choose_dt: need 2r - 7 eps > 0");
  if (!(N > 0.0) || !(c0 > 0.0))
    throw std::invalid_argument("choose_dt: N and c0 must be positive");
  return c0 * std::pow(N, -(2.0 * s + eps) / (2.0 * r - 7.0 * eps));
}

SplitData split_initial_data(const SpinorState& psi0, const WaveState& wave0, double N) {
  auto [lo_p, hi_p] = frequency_split(psi0.a_plus, N);
  auto [lo_m, hi_m] = frequency_split(psi0.a_minus, N);
  SpinorState low(std::move(lo_p), std::move(lo_m), psi0.t);
  SpinorState high(std::move(hi_p), std::move(hi_m), psi0.t);
  WaveState zero_wave(wave0.grid());
  zero_wave.t = wave0.t;
  SplitData data{UWData{low, wave0}, VZData{high, zero_wave}, high};
  return data;
}

WaveDecomposition decompose_wave(const WaveState& data_at_start, const WaveState& at_end) {
  WaveState free_part = free_wave_evolve(data_at_start, at_end.t - data_at_start.t);
  WaveState inhom(at_end.phi - free_part.phi, at_end.phi_t - free_part.phi_t, at_end.t);
  return {std::move(free_part), std::move(inhom)};
}

void CascadeLedger::set_first(const WaveState& w1_data) { first_ = w1_data; }

void CascadeLedger::push_term(const WaveState& term_data) { terms_.push_back(term_data); }

WaveState CascadeLedger::eval(double t) const {
  if (!first_) throw std::logic_error("CascadeLedger::eval: ledger not seeded");
  WaveState acc = free_wave_evolve(*first_, t - first_->t);
  for (const auto& term : terms_) {
    WaveState e = free_wave_evolve(term, t - term.t);
    acc.phi += e.phi;
    acc.phi_t += e.phi_t;
  }
  return acc;
}

namespace {

double spinor_l2(const SpinorState& s) { return std::sqrt(charge(s)); }

double spinor_distance(const SpinorState& a, const SpinorState& b) {
  return std::sqrt(std::pow(l2_distance(a.a_plus, b.a_plus), 2) +
                   std::pow(l2_distance(a.a_minus, b.a_minus), 2));
}

SpinorState spinor_sum(const SpinorState& a, const SpinorState& b, double t) {
  return SpinorState(a.a_plus + b.a_plus, a.a_minus + b.a_minus, t);
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double one_minus_cos_over(double x) {
  if (std::abs(x) < 1e-8) return 0.5 * x - x * x * x / 24.0;
  return (1.0 - std::cos(x)) / x;
}

struct VZState {
  SpinorState V;  // inhomogeneous part of v; v = v_free + V
  WaveState z;
};

// One lockstep dt step of (u, w) by the nonlinear Strang step and of the
// driven pair in the interaction picture of the free wave: with
// v = v^(0) + V and the free part supplied exactly,
//   d/dt aV_pm = i (z + w) aV_-+  +  i (z + w) av0_-+  +  i z au_-+,
//   d/dt zphi_t_hat += [rho(v) + 2 Re<beta u, v>]^ (midpoint impulse),
// where the homogeneous part is the exact pointwise rotation and the frozen
// midpoint sources enter through the integrated rotation kernel. Evolving V
// rather than v keeps the integrator error proportional to the small fields,
// so the measured smoothing is not swamped by transport error of v^(0).
void split_systems_step(UWData& uw, VZState& vz, const SpinorState& v_free0, double dt,
                        bool dealias) {
  const Grid& g = uw.spinor.grid();
  const double t_mid = uw.spinor.t + 0.5 * dt;
  detail::StepMids mids;
  SolverOptions opts{dealias};
  std::tie(uw.spinor, uw.wave) = detail::dkg_step_capture(uw.spinor, uw.wave, dt, opts, &mids);

  SpinorState V_mid = free_dirac_evolve(vz.V, 0.5 * dt);
  WaveState z_mid = free_wave_evolve(vz.z, 0.5 * dt);
  SpinorState v0_mid = free_dirac_evolve(v_free0, t_mid - v_free0.t);

  std::vector<double> z_samp = detail::sampled_potential(z_mid.phi, dealias);
  auto aVp = V_mid.a_plus.to_samples();
  auto aVm = V_mid.a_minus.to_samples();
  auto a0p = v0_mid.a_plus.to_samples();
  auto a0m = v0_mid.a_minus.to_samples();

  // Wave impulse from the pre-rotation midpoint values of v = v^(0) + V.
  std::vector<double> src(g.n);
  for (int j = 0; j < g.n; ++j) {
    cplx avp = a0p[j] + aVp[j];
    cplx avm = a0m[j] + aVm[j];
    cplx cross = mids.a_plus[j] * std::conj(avm) + mids.a_minus[j] * std::conj(avp);
    src[j] = 2.0 * (avp * std::conj(avm)).real() + 2.0 * cross.real();
  }
  SpectralField src_hat = SpectralField::from_real_samples(g, src);
  if (dealias) dealias_two_thirds_inplace(src_hat);
  z_mid.phi_t += dt * src_hat;

  // Affine update: y(dt) = R(theta dt) y + S c with theta = w + z,
  // c = i theta beta v^(0) + i z beta u, S = int_0^dt R(theta (dt-s)) ds.
  for (int j = 0; j < g.n; ++j) {
    double theta = mids.potential[j] + z_samp[j];
    double th = theta * dt;
    double c = std::cos(th), s = std::sin(th);
    double s_diag = dt * sinc(th);
    double s_off = dt * one_minus_cos_over(th);
    cplx src_p = cplx{0.0, 1.0} * (theta * a0m[j] + z_samp[j] * mids.a_minus[j]);
    cplx src_m = cplx{0.0, 1.0} * (theta * a0p[j] + z_samp[j] * mids.a_plus[j]);
    cplx p = aVp[j], m = aVm[j];
    aVp[j] = c * p + cplx{0.0, s} * m + s_diag * src_p + cplx{0.0, s_off} * src_m;
    aVm[j] = cplx{0.0, s} * p + c * m + cplx{0.0, s_off} * src_p + s_diag * src_m;
  }

  SpinorState V_rot(SpectralField::from_samples(g, aVp), SpectralField::from_samples(g, aVm),
                    V_mid.t);
  vz.V = free_dirac_evolve(V_rot, 0.5 * dt);
  vz.z = free_wave_evolve(z_mid, 0.5 * dt);
}

}  // namespace

SplitState::SplitState(const SpinorState& psi0, const WaveState& wave0, const SplitParams& params_,
                       const SplitOptions& opts_)
    : params(params_), opts(opts_), uw{SpinorState(psi0.grid()), WaveState(wave0.grid())},
      v_free0(psi0.grid()) {
  SplitData data = split_initial_data(psi0, wave0, params.N);
  uw = std::move(data.uw);
  v_free0 = std::move(data.v_free);
  t = psi0.t;
  if (opts.with_direct) direct = std::make_pair(psi0, wave0);
  cascade.set_first(uw.wave);
}

IntervalRecord advance_interval(SplitState& state, double dT) {
  const SplitParams& P = state.params;
  const SplitOptions& O = state.opts;
  long steps = detail::step_count(dT, O.dt);
  if (steps < 1) throw std::invalid_argument("advance_interval: empty interval");

  IntervalRecord rec;
  rec.n = state.n;
  const double Ns = std::pow(P.N, P.s);
  const double N2s = Ns * Ns;
  const double u_start_norm = spinor_l2(state.uw.spinor);
  rec.A_n = u_start_norm / Ns;
  rec.B_n = energy_pair_norm(state.uw.wave, P.r) / N2s;

  // sup_t ||w_n^(0)[t]|| over [0, T] from the cascade ledger (before this
  // interval's term is appended).
  if (!state.cascade.empty() && O.cascade_samples > 1) {
    double sup = 0.0;
    for (int i = 0; i < O.cascade_samples; ++i) {
      double tt = P.T * i / (O.cascade_samples - 1);
      sup = std::max(sup, energy_pair_norm(state.cascade.eval(tt), P.r));
    }
    rec.B_free_sup = sup / N2s;
  }

  const UWData uw_start = state.uw;  // data entering the interval

  // (v_n, z_n) data at t_{n-1}: v_n = v^(0) there, so V_n starts at zero,
  // and z_n has zero wave data.
  VZState vz{SpinorState(state.uw.spinor.grid()), WaveState(state.uw.wave.grid())};
  vz.V.t = state.t;
  vz.z.t = state.t;

  auto all_finite = [&]() {
    double probe = charge(state.uw.spinor) + charge(vz.V);
    for (const auto& c : state.uw.wave.phi_t.coeff) probe += std::norm(c);
    for (const auto& c : vz.z.phi_t.coeff) probe += std::norm(c);
    for (const auto& c : state.uw.wave.phi.coeff) probe += std::norm(c);
    for (const auto& c : vz.z.phi.coeff) probe += std::norm(c);
    return std::isfinite(probe);
  };
  try {
    for (long k = 0; k < steps; ++k) {
      split_systems_step(state.uw, vz, state.v_free0, O.dt, O.dealias);
      if (state.direct) {
        SolverOptions sopts{O.dealias};
        std::tie(state.direct->first, state.direct->second) =
            dkg_step(state.direct->first, state.direct->second, O.dt, sopts);
      }
      if (!all_finite())
        throw DivergenceError("field diverged at step " + std::to_string(k + 1), k + 1);
    }
  } catch (const DivergenceError& e) {
    throw DivergenceError(
        "interval " + std::to_string(state.n) + ": " + e.what(), e.step());
  }

  const double t_end = state.t + steps * O.dt;
  state.uw.spinor.t = t_end;  // guard against accumulated dt rounding
  state.uw.wave.t = t_end;
  vz.V.t = t_end;
  vz.z.t = t_end;

  rec.u_charge_drift = std::abs(spinor_l2(state.uw.spinor) - u_start_norm) /
                       std::max(u_start_norm, 1e-300);

  rec.V_norm = spinor_l2(vz.V);
  rec.z_norm = energy_pair_norm(vz.z, P.r);

  WaveDecomposition dec = decompose_wave(uw_start.wave, state.uw.wave);
  rec.W_norm = energy_pair_norm(dec.inhomogeneous, P.r);
  rec.W_constant = rec.W_norm / (steps * O.dt * u_start_norm * u_start_norm);

  SpinorState v_free_end = free_dirac_evolve(state.v_free0, t_end - state.v_free0.t);
  if (state.direct) {
    SpinorState recon = spinor_sum(spinor_sum(state.uw.spinor, vz.V, t_end), v_free_end, t_end);
    double denom = spinor_l2(state.direct->first);
    rec.reconstruction_error = spinor_distance(recon, state.direct->first) /
                               std::max(denom, 1e-300);
  }

  if (O.picard == PicardCheck::All || (O.picard == PicardCheck::First && state.n == 1)) {
    try {
      PicardResult pr = picard_solve(uw_start.spinor, uw_start.wave, steps * O.dt, O.dt,
                                     O.picard_max_iters, O.picard_tol, P.r, steps,
                                     SolverOptions{O.dealias});
      rec.contraction_iters = pr.iters;
    } catch (const NonContractionError&) {
      rec.contraction_iters = -1;
    }
  }

  // Interval hand-off: u_{n+1} = u_n + V_n, w_{n+1} = w_n + z_n at t_n.
  state.uw.spinor = spinor_sum(state.uw.spinor, vz.V, t_end);
  WaveState new_wave(state.uw.wave.phi + vz.z.phi, state.uw.wave.phi_t + vz.z.phi_t, t_end);
  state.uw.wave = new_wave;

  // Cascade term: free wave seeded by (W_n + z_n)[t_n].
  WaveState wtilde(dec.inhomogeneous.phi + vz.z.phi, dec.inhomogeneous.phi_t + vz.z.phi_t, t_end);
  state.cascade.push_term(wtilde);
  if (O.cascade_samples > 1) {
    double sup = 0.0;
    for (int i = 0; i < O.cascade_samples; ++i) {
      double tt = P.T * i / (O.cascade_samples - 1);
      double val = energy_pair_norm(free_wave_evolve(wtilde, tt - wtilde.t), P.r);
      rec.wtilde_trace.push_back(val);
      sup = std::max(sup, val);
    }
    rec.wtilde_sup = sup;
  }

  // Telescoping identity: the cascade evaluated at t_n must reproduce the
  // free-part data of w_{n+1}, which is the w_{n+1} data itself.
  WaveState cascade_end = state.cascade.eval(t_end);
  double scale = std::max(1.0, energy_pair_norm(new_wave, P.r));
  rec.cascade_residual = (l2_norm(cascade_end.phi - new_wave.phi) +
                          l2_norm(cascade_end.phi_t - new_wave.phi_t)) / scale;

  rec.zero_mode_abs = std::abs(new_wave.phi.coeff[0]) + std::abs(new_wave.phi_t.coeff[0]);

  state.t = t_end;
  state.n += 1;
  return rec;
}

RunReport run_bourgain(const SpinorState& psi0, const WaveState& wave0, const SplitParams& params,
                       const SplitOptions& opts) {
  auto violations = validate_params(params.s, params.r, params.eps);
  if (!violations.empty())
    throw std::invalid_argument("run_bourgain: parameter violation: " + violations.front().name +
                                " (" + violations.front().detail + ")");
  if (!(params.N >= 2.0)) throw std::invalid_argument("run_bourgain: N must be >= 2");
  if (!(params.T > 0.0)) throw std::invalid_argument("run_bourgain: T must be positive");

  RunReport report;
  report.params = params;

  // Quantize the interval length to whole steps of dt.
  double dT_raw = choose_dt(params.s, params.r, params.eps, params.N, params.c0);
  long per = std::max<long>(1, std::lround(dT_raw / opts.dt));
  report.dT = per * opts.dt;

  SplitState state(psi0, wave0, params, opts);
  const double t0 = state.t;

  while (state.t - t0 < params.T - 0.5 * opts.dt) {
    double remaining = params.T - (state.t - t0);
    long steps = std::min<long>(per, std::max<long>(1, std::lround(remaining / opts.dt)));
    try {
      IntervalRecord rec = advance_interval(state, steps * opts.dt);
      report.cascade_norms.push_back(rec.wtilde_trace);
      report.records.push_back(std::move(rec));
    } catch (const DivergenceError& e) {
      report.aborted = true;
      report.abort_reason = e.what();
      break;
    }
  }
  report.M = static_cast<long>(report.records.size());

  RunSummary& sum = report.summary;
  if (!report.records.empty()) {
    sum.A1 = report.records.front().A_n;
    sum.B1 = report.records.front().B_n;
    for (const auto& rec : report.records) {
      sum.max_A = std::max(sum.max_A, rec.A_n);
      sum.max_B = std::max(sum.max_B, rec.B_n);
      sum.W_constant_max = std::max(sum.W_constant_max, rec.W_constant);
      sum.max_reconstruction_error =
          std::max(sum.max_reconstruction_error, rec.reconstruction_error);
      sum.max_cascade_residual = std::max(sum.max_cascade_residual, rec.cascade_residual);
    }
    sum.A_bounded = sum.max_A <= 2.0 * sum.A1 + 1e-12;
    sum.B_bound_value = 2.0 * (sum.B1 + sum.W_constant_max * params.T * sum.A1 * sum.A1);
    sum.B_bounded = sum.max_B <= sum.B_bound_value + 1e-12;
  }
  return report;
}

SweepResult measure_smoothing(const SpinorState& psi0, const WaveState& wave0,
                              const SplitParams& base, const SplitOptions& opts,
                              std::span<const double> N_list, int workers) {
  if (N_list.size() < 4)
    throw std::invalid_argument("measure_smoothing: need at least 4 cutoffs");
  SweepResult result;
  result.target_exponent = 3.0 * base.s - base.r;
  result.points.resize(N_list.size());

  auto run_point = [&](size_t i) {
    SplitParams p = base;
    p.N = N_list[i];
    SplitOptions o = opts;
    o.with_direct = false;
    o.picard = PicardCheck::None;
    o.cascade_samples = 0;

    double dT_raw = choose_dt(p.s, p.r, p.eps, p.N, p.c0);
    long per = std::max<long>(1, std::lround(dT_raw / o.dt));
    double dT = per * o.dt;

    SplitState state(psi0, wave0, p, o);
    double baseline = spinor_l2(state.v_free0);
    IntervalRecord rec = advance_interval(state, dT);
    result.points[i] = SweepPoint{p.N, dT, static_cast<long>(std::ceil(p.T / dT)),
                                  rec.V_norm, baseline};
  };

  if (workers <= 1) {
    for (size_t i = 0; i < N_list.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < N_list.size(); i = next.fetch_add(1)) run_point(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<double> logN, logV, logB;
  bool all_positive = true;
  for (const auto& pt : result.points) {
    if (!(pt.V_norm > 0.0) || !(pt.baseline_norm > 0.0)) all_positive = false;
  }
  if (!all_positive) {
    result.degenerate = true;
    return result;
  }
  for (const auto& pt : result.points) {
    logN.push_back(std::log(pt.N));
    logV.push_back(std::log(pt.V_norm));
    logB.push_back(std::log(pt.baseline_norm));
  }
  LineFit fv = fit_line(logN, logV);
  LineFit fb = fit_line(logN, logB);
  result.v_slope = fv.slope;
  result.v_residual = fv.rms_residual;
  result.baseline_slope = fb.slope;
  result.baseline_residual = fb.rms_residual;
  return result;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string interval_csv(const RunReport& report) {
  std::string out = "n,A_n,B_n,V_norm,z_norm,W_norm,reconstruction_error\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.n) + "," + fmt_double(r.A_n) + "," + fmt_double(r.B_n) + "," +
           fmt_double(r.V_norm) + "," + fmt_double(r.z_norm) + "," + fmt_double(r.W_norm) + "," +
           fmt_double(r.reconstruction_error) + "\n";
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "N,dT,M,V_norm,baseline_norm\n";
  for (const auto& p : result.points) {
    out += fmt_double(p.N) + "," + fmt_double(p.dT) + "," + std::to_string(p.M) + "," +
           fmt_double(p.V_norm) + "," + fmt_double(p.baseline_norm) + "\n";
  }
  return out;
}

std::string report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["params"] = {{"s", report.params.s},   {"r", report.params.r}, {"eps", report.params.eps},
                 {"N", report.params.N},   {"T", report.params.T}, {"c0", report.params.c0}};
  j["dT"] = report.dT;
  j["M"] = report.M;
  j["aborted"] = report.aborted;
  if (report.aborted) j["abort_reason"] = report.abort_reason;
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    recs.push_back({{"n", r.n},
                    {"A_n", r.A_n},
                    {"B_n", r.B_n},
                    {"V_norm", r.V_norm},
                    {"z_norm", r.z_norm},
                    {"W_norm", r.W_norm},
                    {"reconstruction_error", r.reconstruction_error},
                    {"contraction_iters", r.contraction_iters},
                    {"B_free_sup", r.B_free_sup},
                    {"wtilde_sup", r.wtilde_sup},
                    {"W_constant", r.W_constant},
                    {"u_charge_drift", r.u_charge_drift},
                    {"cascade_residual", r.cascade_residual},
                    {"zero_mode_abs", r.zero_mode_abs}});
  }
  j["summary"] = {{"A1", report.summary.A1},
                  {"B1", report.summary.B1},
                  {"max_A", report.summary.max_A},
                  {"max_B", report.summary.max_B},
                  {"A_bounded", report.summary.A_bounded},
                  {"B_bounded", report.summary.B_bounded},
                  {"B_bound_value", report.summary.B_bound_value},
                  {"W_constant_max", report.summary.W_constant_max},
                  {"max_reconstruction_error", report.summary.max_reconstruction_error},
                  {"max_cascade_residual", report.summary.max_cascade_residual}};
  return j.dump(2);
}

std::string sweep_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : result.points)
    pts.push_back({{"N", p.N},
                   {"dT", p.dT},
                   {"M", p.M},
                   {"V_norm", p.V_norm},
                   {"baseline_norm", p.baseline_norm}});
  j["degenerate"] = result.degenerate;
  j["v_slope"] = result.v_slope;
  j["v_residual"] = result.v_residual;
  j["baseline_slope"] = result.baseline_slope;
  j["baseline_residual"] = result.baseline_residual;
  j["target_exponent"] = result.target_exponent;
  return j.dump(2);
}

}  // namespace dkg
