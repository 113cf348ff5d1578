#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dkg/coupled.hpp"

namespace dkg {

/// Parameters of the high-low frequency induction.
struct SplitParams {
  double s = 0.1;    // spinor data regularity is -s, 0 < s < 1/8
  double r = 0.45;   // field regularity, s + sqrt(s^2+s) < r < 1/2
  double eps = 0.01; // b = 1/2 + eps
  double N = 256.0;  // frequency cutoff
  double T = 1.0;    // total horizon
  double c0 = 1.0;   // prefactor of the interval-length rule
};

struct ParamViolation {
  std::string name;
  std::string detail;
};

/// Checks, in order: 0 < s < 1/8; s + sqrt(s^2+s) < r < 1/2; the three base
/// exponent inequalities
///   2s - r + s/r < 0,   -1/2 + s/r < 0,   2s - r - 3s/(4r) + s/r < 0;
/// that eps keeps each of those exponents negative after the explicit +2eps
/// corrections; and 2r - 7 eps > 0. Violations are returned as data, first
/// failed check first; empty means ok.
std::vector<ParamViolation> validate_params(double s, double r, double eps);

/// Interval length dT = c0 * N^(-(2s+eps)/(2r-7eps)). Monotone decreasing in
/// N; satisfies dT^(2r-7eps) N^(2s) = c0^(2r-7eps) N^(-eps) exactly.
/// Requires 2r - 7 eps > 0.
double choose_dt(double s, double r, double eps, double N, double c0);

struct UWData {
  SpinorState spinor;
  WaveState wave;
};
struct VZData {
  SpinorState spinor;
  WaveState wave;
};
struct SplitData {
  UWData uw;          // low-frequency spinor data with the full wave data
  VZData vz;          // high-frequency spinor data with zero wave data
  SpinorState v_free; // seed of the global free evolution v^(0)
};

/// Frequency splitting of the initial data at cutoff N; recombination of the
/// spinor parts is exact.
SplitData split_initial_data(const SpinorState& psi0, const WaveState& wave0, double N);

/// Free/inhomogeneous decomposition of a wave trajectory over one interval:
/// free_part is the free evolution of the start data to the end time and
/// inhomogeneous = at_end - free_part (zero data at the start).
struct WaveDecomposition {
  WaveState free_part;
  WaveState inhomogeneous;
};
WaveDecomposition decompose_wave(const WaveState& data_at_start, const WaveState& at_end);

/// Telescoped free-wave bookkeeping: w_n^(0) = w_1^(0) + sum_k wtilde_k^(0),
/// each term an exact per-mode free evolution from its own base time.
class CascadeLedger {
 public:
  void set_first(const WaveState& w1_data);
  void push_term(const WaveState& term_data);
  WaveState eval(double t) const;
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return !first_.has_value(); }

 private:
  std::optional<WaveState> first_;
  std::vector<WaveState> terms_;
};

struct IntervalRecord {
  int n = 0;
  double A_n = 0.0;  // ||u_n(t_{n-1})||_{L2} / N^s
  double B_n = 0.0;  // ||w_n[t_{n-1}]||_{H^r pair} / N^{2s}
  double V_norm = 0.0;                // ||V_n(t_n)||_{L2}
  double z_norm = 0.0;                // ||z_n[t_n]||_{H^r pair}
  double W_norm = 0.0;                // ||W_n[t_n]||_{H^r pair}
  double reconstruction_error = 0.0;  // ||(u_n+v_n) - psi_direct|| / ||psi_direct||
  int contraction_iters = 0;          // Picard count when the check ran, else 0 (-1: no contraction)
  // Diagnostics beyond the CSV columns (JSON report only):
  double B_free_sup = 0.0;       // sup_t ||w_n^(0)[t]||_{H^r pair} / N^{2s}
  double wtilde_sup = 0.0;       // sup_t ||wtilde_{n+1}^(0)[t]||_{H^r pair}
  double W_constant = 0.0;       // ||W_n[t_n]|| / (dT ||u_n(t_{n-1})||^2)
  double u_charge_drift = 0.0;   // relative drift of ||u_n||_{L2} over the interval
  double cascade_residual = 0.0; // telescoping identity residual at t_n
  double zero_mode_abs = 0.0;    // |phi_hat(0)| + |phit_hat(0)| of the w_{n+1} data
  std::vector<double> wtilde_trace;  // ||wtilde_{n+1}^(0)[t]||_{H^r pair} over sampled t in [0, T]
};

enum class PicardCheck { None, First, All };

struct SplitOptions {
  double dt = 1.0 / 512.0;
  bool dealias = true;
  bool with_direct = true;  // carry the matching direct DKG solve for reconstruction checks
  PicardCheck picard = PicardCheck::First;
  int picard_max_iters = 30;
  double picard_tol = 1e-9;
  int cascade_samples = 9;  // time samples for the sup_t traces
};

struct RunSummary {
  double A1 = 0.0, B1 = 0.0;
  double max_A = 0.0, max_B = 0.0;
  bool A_bounded = false;      // max_n A_n <= 2 A_1
  bool B_bounded = false;      // max_n B_n <= 2 (B_1 + C_W T A_1^2)
  double B_bound_value = 0.0;
  double W_constant_max = 0.0; // measured C of the inhomogeneous-part bound
  double max_reconstruction_error = 0.0;
  double max_cascade_residual = 0.0;
};

struct RunReport {
  SplitParams params;
  double dT = 0.0;  // dt-quantized interval length actually used
  long M = 0;
  std::vector<IntervalRecord> records;
  std::vector<std::vector<double>> cascade_norms;  // per interval, ||wtilde_{n+1}^(0)[t]|| trace
  RunSummary summary;
  bool aborted = false;
  std::string abort_reason;
};

/// Mutable driver state positioned at the start of interval n.
struct SplitState {
  SplitParams params;
  SplitOptions opts;
  int n = 1;
  double t = 0.0;
  UWData uw;
  SpinorState v_free0;
  std::optional<std::pair<SpinorState, WaveState>> direct;
  CascadeLedger cascade;

  SplitState(const SpinorState& psi0, const WaveState& wave0, const SplitParams& params,
             const SplitOptions& opts);
};

/// Co-evolves (u_n, w_n) by the nonlinear split-step solver and (v_n, z_n) by
/// the forced system driven by it over [t, t + dT]; extracts V_n, feeds it
/// back into the u_{n+1} data, hands z_n to w_{n+1}, and updates the cascade
/// ledger. dT must be an integral number of dt steps.
IntervalRecord advance_interval(SplitState& state, double dT);

/// The full induction driver: M = ceil(T/dT) intervals of advance_interval
/// with boundedness bookkeeping. Interval failures abort with a partial
/// report (aborted flag set) instead of throwing.
RunReport run_bourgain(const SpinorState& psi0, const WaveState& wave0, const SplitParams& params,
                       const SplitOptions& opts);

struct SweepPoint {
  double N = 0.0, dT = 0.0;
  long M = 0;
  double V_norm = 0.0, baseline_norm = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double v_slope = 0.0, v_residual = 0.0;
  double baseline_slope = 0.0, baseline_residual = 0.0;
  double target_exponent = 0.0;  // 3s - r, recorded alongside, not enforced
  bool degenerate = false;
};

/// One interval per cutoff in N_list (>= 4 values); fits log||V_1(dT)|| and
/// log||psi_0^H||_{L2} against log N. Deterministic merge; points may be
/// computed on `workers` threads.
SweepResult measure_smoothing(const SpinorState& psi0, const WaveState& wave0,
                              const SplitParams& base, const SplitOptions& opts,
                              std::span<const double> N_list, int workers = 1);

/// CSV with header "n,A_n,B_n,V_norm,z_norm,W_norm,reconstruction_error".
std::string interval_csv(const RunReport& report);
/// CSV with header "N,dT,M,V_norm,baseline_norm".
std::string sweep_csv(const SweepResult& result);
/// Full JSON document for a run report (all diagnostics included).
std::string report_json(const RunReport& report);
std::string sweep_json(const SweepResult& result);

}  // namespace dkg
