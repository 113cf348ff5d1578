#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "dkg/errors.hpp"

using namespace dkg::cli;

int main(int argc, char** argv) {
  CLI::App app{"dkg_lab: 1d Dirac-Klein-Gordon pseudospectral solver and estimate lab"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb

  CliOptions opts;
  app.add_option("--config", opts.config_path, "JSON run configuration");
  app.add_option("--out", opts.out_dir, "output directory (default: out)");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_option("--workers", opts.workers, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", opts.format, "stdout format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* solve = app.add_subcommand("solve", "run the coupled solver, export the trajectory");
  auto* bourgain =
      app.add_subcommand("bourgain", "run the high-low splitting driver and N-sweeps");
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run built-in verification suites");
  verify->add_option("suite", suite, "charge|bilinear|algebraic|product|apriori|all");
  std::string run_dir;
  auto* report = app.add_subcommand("report", "summarize a run directory, check hashes");
  report->add_option("run_dir", run_dir, "registry directory of a previous run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (seed_opt->count() > 0) opts.seed_override = seed;
  if (const char* env_out = std::getenv("DKG_LAB_OUT")) opts.out_dir = env_out;

  try {
    if (solve->parsed()) return cmd_solve(opts);
    if (bourgain->parsed()) return cmd_bourgain(opts);
    if (verify->parsed()) return cmd_verify(opts, suite);
    if (report->parsed()) return cmd_report(opts, run_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const dkg::DivergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
