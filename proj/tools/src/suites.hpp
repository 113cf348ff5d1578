#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dkg::cli {

struct SuiteRow {
  std::string check;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteRow> rows;
  bool pass = false;
  std::string probe_csv;        // per-probe rows, when the suite ran probes
  std::string violations_json;  // full mode points of any violations
};

std::vector<std::string> known_suites();

/// Runs one of charge|bilinear|algebraic|product|apriori (or all of them for
/// "all") against the built-in golden setups. Throws std::invalid_argument
/// for an unknown suite name.
std::vector<SuiteReport> run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace dkg::cli
