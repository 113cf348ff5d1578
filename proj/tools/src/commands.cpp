#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <tuple>

#include "config.hpp"
#include "dkg/coupled.hpp"
#include "dkg/errors.hpp"
#include "dkg/field_io.hpp"
#include "dkg/splitting.hpp"
#include "manifest.hpp"
#include "suites.hpp"

namespace dkg::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig load_with_overrides(const CliOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("missing --config");
  RunConfig cfg = load_config_file(opts.config_path);
  if (opts.seed_override) cfg.seed = *opts.seed_override;
  return cfg;
}

fs::path prepare_run_dir(const CliOptions& opts, const json& snapshot) {
  fs::path dir = registry_dir(opts.out_dir, snapshot);
  fs::create_directories(dir);
  return dir;
}

std::string trajectory_norms_csv(const Trajectory& traj, double r) {
  std::string csv = "t,charge,wave_energy,phi_pair_r\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    csv += fmt(traj.times[i]) + "," + fmt(charge(traj.spinors[i])) + "," +
           fmt(wave_energy(traj.waves[i])) + "," + fmt(energy_pair_norm(traj.waves[i], r)) + "\n";
  }
  return csv;
}

json trajectory_manifest_json(const Trajectory& traj, const Grid& g, double r) {
  json t;
  t["dt"] = traj.dt;
  t["grid"] = {{"n", g.n}, {"L", g.period}};
  t["times"] = traj.times;
  auto& norms = t["norms"] = json::array();
  for (size_t i = 0; i < traj.times.size(); ++i) {
    norms.push_back({{"t", traj.times[i]},
                     {"charge", charge(traj.spinors[i])},
                     {"wave_energy", wave_energy(traj.waves[i])},
                     {"phi_pair_r", energy_pair_norm(traj.waves[i], r)}});
  }
  return t;
}

}  // namespace

int cmd_solve(const CliOptions& opts) {
  RunConfig cfg = load_with_overrides(opts);
  if (!cfg.solver) throw ConfigError("missing required field: solver");
  Grid g = make_grid(cfg);
  SpinorState psi0 = build_spinor(cfg.spinor.value_or(SpinorDataConfig{}), g, cfg.seed);
  WaveState wave0 = build_wave(cfg.wave.value_or(WaveDataConfig{}), g, cfg.seed);

  json snapshot = emit_config(cfg);
  fs::path dir = prepare_run_dir(opts, snapshot);
  RunManifest manifest(snapshot, kToolVersion);

  const double r = cfg.split ? cfg.split->r : 0.45;
  try {
    SolverOptions sopts{cfg.solver->dealias};
    Trajectory traj = dkg_solve(psi0, wave0, cfg.solver->T, cfg.solver->dt,
                                cfg.solver->record_every, sopts);
    manifest.add_artifact(dir, "norms.csv", trajectory_norms_csv(traj, r));
    manifest.add_artifact(dir, "trajectory.json",
                          trajectory_manifest_json(traj, g, r).dump(2) + "\n");
    fs::create_directories(dir / "trajectory");
    for (size_t i = 0; i < traj.times.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "trajectory/snap_%04zu", i);
      manifest.add_artifact(dir, std::string(name) + ".a_plus.dkgf",
                            field_to_bytes(traj.spinors[i].a_plus));
      manifest.add_artifact(dir, std::string(name) + ".a_minus.dkgf",
                            field_to_bytes(traj.spinors[i].a_minus));
      manifest.add_artifact(dir, std::string(name) + ".phi.dkgf",
                            field_to_bytes(traj.waves[i].phi));
      manifest.add_artifact(dir, std::string(name) + ".phi_t.dkgf",
                            field_to_bytes(traj.waves[i].phi_t));
    }
    manifest.finish(dir);
  } catch (const DivergenceError& e) {
    manifest.set_status("diverged");
    manifest.finish(dir);
    std::cerr << "solve: " << e.what() << "\n";
    return 1;
  }
  std::cout << dir.string() << "\n";
  return 0;
}

int cmd_bourgain(const CliOptions& opts) {
  RunConfig cfg = load_with_overrides(opts);
  if (!cfg.solver) throw ConfigError("missing required field: solver");
  if (!cfg.split) throw ConfigError("missing required field: split");
  Grid g = make_grid(cfg);
  SpinorState psi0 = build_spinor(cfg.spinor.value_or(SpinorDataConfig{}), g, cfg.seed);
  WaveState wave0 = build_wave(cfg.wave.value_or(WaveDataConfig{}), g, cfg.seed);

  SplitParams params;
  params.s = cfg.split->s;
  params.r = cfg.split->r;
  params.eps = cfg.split->eps;
  params.N = cfg.split->N;
  params.T = cfg.split->T;
  params.c0 = cfg.split->c0;
  SplitOptions sopts;
  sopts.dt = cfg.solver->dt;
  sopts.dealias = cfg.solver->dealias;
  sopts.picard = cfg.split->picard;

  json snapshot = emit_config(cfg);
  fs::path dir = prepare_run_dir(opts, snapshot);
  RunManifest manifest(snapshot, kToolVersion);

  auto violations = validate_params(params.s, params.r, params.eps);
  if (!violations.empty()) {
    std::cerr << "bourgain: parameter violation: " << violations.front().name << " ("
              << violations.front().detail << ")\n";
    return 2;
  }

  RunReport report = run_bourgain(psi0, wave0, params, sopts);
  manifest.add_artifact(dir, "intervals.csv", interval_csv(report));
  manifest.add_artifact(dir, "report.json", report_json(report) + "\n");

  int status = report.aborted ? 1 : 0;
  if (cfg.sweep) {
    try {
      SweepResult sweep =
          measure_smoothing(psi0, wave0, params, sopts, *cfg.sweep, opts.workers);
      manifest.add_artifact(dir, "sweep.csv", sweep_csv(sweep));
      manifest.add_artifact(dir, "sweep.json", sweep_json(sweep) + "\n");
    } catch (const std::invalid_argument& e) {
      std::cerr << "bourgain: sweep: " << e.what() << "\n";
      status = 2;
    }
  }
  if (report.aborted) manifest.set_status("aborted");
  manifest.finish(dir);
  if (report.aborted) std::cerr << "bourgain: aborted: " << report.abort_reason << "\n";
  std::cout << dir.string() << "\n";
  return status;
}

int cmd_verify(const CliOptions& opts, const std::string& suite) {
  std::uint64_t seed = opts.seed_override.value_or(20260801ULL);
  std::vector<SuiteReport> reports;
  try {
    reports = run_verify(suite, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }

  json j = json::array();
  bool all_pass = true;
  for (const auto& rep : reports) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
      rows.push_back({{"check", row.check},
                      {"pass", row.pass},
                      {"measured", row.measured},
                      {"bound", row.bound},
                      {"detail", row.detail}});
    }
    j.push_back({{"suite", rep.suite}, {"pass", rep.pass}, {"rows", rows}});
    all_pass = all_pass && rep.pass;
  }

  if (opts.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& rep : reports) {
      std::printf("suite %-10s %s\n", rep.suite.c_str(), rep.pass ? "PASS" : "FAIL");
      for (const auto& row : rep.rows)
        std::printf("  [%s] %-55s measured=%.6g bound=%.6g %s\n", row.pass ? "ok" : "FAIL",
                    row.check.c_str(), row.measured, row.bound, row.detail.c_str());
    }
  }

  fs::path dir = fs::path(opts.out_dir) / "verify";
  fs::create_directories(dir);
  atomic_write(dir / ("verify_" + suite + ".json"), j.dump(2) + "\n");
  for (const auto& rep : reports) {
    if (!rep.probe_csv.empty())
      atomic_write(dir / ("probes_" + rep.suite + ".csv"), rep.probe_csv);
    if (!rep.violations_json.empty())
      atomic_write(dir / ("violations_" + rep.suite + ".json"), rep.violations_json + "\n");
  }
  return all_pass ? 0 : 1;
}

int cmd_report(const CliOptions& opts, const std::string& run_dir) {
  (void)opts;
  fs::path dir(run_dir);
  fs::path mpath = dir / "manifest.json";
  std::ifstream in(mpath);
  if (!in) {
    std::cerr << "report: no manifest at " << mpath.string() << "\n";
    return 2;
  }
  json manifest;
  try {
    in >> manifest;
  } catch (const std::exception& e) {
    std::cerr << "report: bad manifest: " << e.what() << "\n";
    return 2;
  }

  bool ok = true;
  size_t checked = 0;
  for (const auto& art : manifest["artifacts"]) {
    fs::path p = dir / art["path"].get<std::string>();
    std::ifstream f(p, std::ios::binary);
    if (!f) {
      std::cerr << "missing artifact: " << p.string() << "\n";
      ok = false;
      continue;
    }
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    std::string expect = art["fnv1a64"].get<std::string>();
    if (fnv1a64_hex(bytes) != expect) {
      std::cerr << "hash mismatch: " << p.string() << "\n";
      ok = false;
    }
    ++checked;
  }

  if (opts.format == "json") {
    json out = {{"run", run_dir},
                {"artifacts_checked", checked},
                {"hashes_ok", ok},
                {"started_utc", manifest.value("started_utc", "")},
                {"finished_utc", manifest.value("finished_utc", "")}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("run %s\n", run_dir.c_str());
    std::printf("  started  %s\n", manifest.value("started_utc", "?").c_str());
    std::printf("  finished %s\n", manifest.value("finished_utc", "?").c_str());
    std::printf("  artifacts %zu, hashes %s\n", checked, ok ? "ok" : "MISMATCH");
  }
  return ok ? 0 : 1;
}

}  // namespace dkg::cli
