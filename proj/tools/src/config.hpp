#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dkg/dirac.hpp"
#include "dkg/splitting.hpp"
#include "dkg/wave.hpp"

namespace dkg::cli {

using json = nlohmann::ordered_json;

/// Invalid or incomplete configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  int n = 0;
  double L = 64.0;
};

struct SpinorDataConfig {
  enum class Kind { Zero, Gaussian, Rough };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  double center = 0.0;   // gaussian
  double width = 1.0;    // gaussian
  int k_mod = 0;         // gaussian
  double s = 0.1;        // rough
};

struct WaveDataConfig {
  enum class Kind { Zero, Gaussian, Random };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  double center = 0.0;  // gaussian
  double width = 1.0;   // gaussian
  double decay = 2.0;   // random
};

struct SolverConfig {
  double T = 1.0;
  double dt = 1.0 / 512.0;
  int record_every = 1;
  bool dealias = true;
};

struct SplitBlock {
  double s = 0.1, r = 0.45, eps = 0.01;
  double N = 256.0;
  double c0 = 1.0;
  double T = 1.0;
  PicardCheck picard = PicardCheck::First;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::optional<GridConfig> grid;
  std::optional<SpinorDataConfig> spinor;
  std::optional<WaveDataConfig> wave;
  std::optional<SolverConfig> solver;
  std::optional<SplitBlock> split;
  std::optional<std::vector<double>> sweep;
};

/// Strict parse: unknown keys and type mismatches raise ConfigError naming
/// the dotted field path.
RunConfig parse_config(const json& j);
RunConfig load_config_file(const std::string& path);

/// Canonical emission; parse(emit(parse(x))) == parse(x).
json emit_config(const RunConfig& c);

Grid make_grid(const RunConfig& c);
SpinorState build_spinor(const SpinorDataConfig& c, const Grid& g, std::uint64_t seed);
WaveState build_wave(const WaveDataConfig& c, const Grid& g, std::uint64_t seed);

}  // namespace dkg::cli
