#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace dkg::cli {

struct CliOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
  std::string format = "csv";  // csv | json
};

inline constexpr const char* kToolVersion = "0.1.0";

int cmd_solve(const CliOptions& opts);
int cmd_bourgain(const CliOptions& opts);
int cmd_verify(const CliOptions& opts, const std::string& suite);
int cmd_report(const CliOptions& opts, const std::string& run_dir);

}  // namespace dkg::cli
