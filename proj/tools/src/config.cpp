#include "config.hpp"

#include <fstream>
#include <set>

#include "dkg/fields.hpp"
#include "dkg/rough_data.hpp"

namespace dkg::cli {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw ConfigError("unknown key: " + (scope.empty() ? it.key() : scope + "." + it.key()));
  }
}

const json& require(const json& j, const char* key, const std::string& scope) {
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError("missing required field: " + (scope.empty() ? key : scope + "." + key));
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("field " + path + " must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError("field " + path + " must be an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError("field " + path + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("field " + path + " must be a string");
  return v.get<std::string>();
}

GridConfig parse_grid(const json& j) {
  reject_unknown(j, {"n", "L"}, "grid");
  GridConfig g;
  g.n = as_int(require(j, "n", "grid"), "grid.n");
  g.L = as_number(require(j, "L", "grid"), "grid.L");
  return g;
}

SpinorDataConfig parse_spinor(const json& j) {
  SpinorDataConfig c;
  std::string type = as_string(require(j, "type", "data.spinor"), "data.spinor.type");
  if (type == "zero") {
    reject_unknown(j, {"type"}, "data.spinor");
    c.kind = SpinorDataConfig::Kind::Zero;
  } else if (type == "gaussian") {
    reject_unknown(j, {"type", "amplitude", "center", "width", "k_mod"}, "data.spinor");
    c.kind = SpinorDataConfig::Kind::Gaussian;
    c.amplitude = as_number(require(j, "amplitude", "data.spinor"), "data.spinor.amplitude");
    c.center = as_number(require(j, "center", "data.spinor"), "data.spinor.center");
    c.width = as_number(require(j, "width", "data.spinor"), "data.spinor.width");
    if (j.contains("k_mod")) c.k_mod = as_int(j["k_mod"], "data.spinor.k_mod");
  } else if (type == "rough") {
    reject_unknown(j, {"type", "amplitude", "s"}, "data.spinor");
    c.kind = SpinorDataConfig::Kind::Rough;
    c.amplitude = as_number(require(j, "amplitude", "data.spinor"), "data.spinor.amplitude");
    c.s = as_number(require(j, "s", "data.spinor"), "data.spinor.s");
  } else {
    throw ConfigError("data.spinor.type must be zero|gaussian|rough");
  }
  return c;
}

WaveDataConfig parse_wave(const json& j) {
  WaveDataConfig c;
  std::string type = as_string(require(j, "type", "data.wave"), "data.wave.type");
  if (type == "zero") {
    reject_unknown(j, {"type"}, "data.wave");
    c.kind = WaveDataConfig::Kind::Zero;
  } else if (type == "gaussian") {
    reject_unknown(j, {"type", "amplitude", "center", "width"}, "data.wave");
    c.kind = WaveDataConfig::Kind::Gaussian;
    c.amplitude = as_number(require(j, "amplitude", "data.wave"), "data.wave.amplitude");
    c.center = as_number(require(j, "center", "data.wave"), "data.wave.center");
    c.width = as_number(require(j, "width", "data.wave"), "data.wave.width");
  } else if (type == "random") {
    reject_unknown(j, {"type", "amplitude", "decay"}, "data.wave");
    c.kind = WaveDataConfig::Kind::Random;
    c.amplitude = as_number(require(j, "amplitude", "data.wave"), "data.wave.amplitude");
    c.decay = as_number(require(j, "decay", "data.wave"), "data.wave.decay");
  } else {
    throw ConfigError("data.wave.type must be zero|gaussian|random");
  }
  return c;
}

SolverConfig parse_solver(const json& j) {
  reject_unknown(j, {"T", "dt", "record_every", "dealias"}, "solver");
  SolverConfig s;
  s.T = as_number(require(j, "T", "solver"), "solver.T");
  s.dt = as_number(require(j, "dt", "solver"), "solver.dt");
  if (j.contains("record_every")) s.record_every = as_int(j["record_every"], "solver.record_every");
  if (j.contains("dealias")) s.dealias = as_bool(j["dealias"], "solver.dealias");
  if (s.record_every < 1) throw ConfigError("solver.record_every must be >= 1");
  if (!(s.dt > 0.0)) throw ConfigError("solver.dt must be positive");
  return s;
}

SplitBlock parse_split(const json& j) {
  reject_unknown(j, {"s", "r", "eps", "N", "c0", "T", "picard"}, "split");
  SplitBlock b;
  b.s = as_number(require(j, "s", "split"), "split.s");
  b.r = as_number(require(j, "r", "split"), "split.r");
  b.N = as_number(require(j, "N", "split"), "split.N");
  b.T = as_number(require(j, "T", "split"), "split.T");
  if (j.contains("eps")) b.eps = as_number(j["eps"], "split.eps");
  if (j.contains("c0")) b.c0 = as_number(j["c0"], "split.c0");
  if (j.contains("picard")) {
    std::string p = as_string(j["picard"], "split.picard");
    if (p == "none")
      b.picard = PicardCheck::None;
    else if (p == "first")
      b.picard = PicardCheck::First;
    else if (p == "all")
      b.picard = PicardCheck::All;
    else
      throw ConfigError("split.picard must be none|first|all");
  }
  return b;
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"seed", "grid", "data", "solver", "split", "sweep"}, "");
  RunConfig c;
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (!s.is_number_unsigned() && !s.is_number_integer())
      throw ConfigError("field seed must be an integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("grid")) c.grid = parse_grid(j["grid"]);
  if (j.contains("data")) {
    const json& d = j["data"];
    reject_unknown(d, {"spinor", "wave"}, "data");
    if (d.contains("spinor")) c.spinor = parse_spinor(d["spinor"]);
    if (d.contains("wave")) c.wave = parse_wave(d["wave"]);
  }
  if (j.contains("solver")) c.solver = parse_solver(j["solver"]);
  if (j.contains("split")) c.split = parse_split(j["split"]);
  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    reject_unknown(sw, {"N"}, "sweep");
    const json& arr = require(sw, "N", "sweep");
    if (!arr.is_array() || arr.size() < 1) throw ConfigError("sweep.N must be a nonempty array");
    std::vector<double> Ns;
    for (size_t i = 0; i < arr.size(); ++i)
      Ns.push_back(as_number(arr[i], "sweep.N[" + std::to_string(i) + "]"));
    c.sweep = std::move(Ns);
  }
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

json emit_config(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  if (c.grid) j["grid"] = {{"n", c.grid->n}, {"L", c.grid->L}};
  if (c.spinor || c.wave) {
    json d = json::object();
    if (c.spinor) {
      const auto& s = *c.spinor;
      switch (s.kind) {
        case SpinorDataConfig::Kind::Zero:
          d["spinor"] = {{"type", "zero"}};
          break;
        case SpinorDataConfig::Kind::Gaussian:
          d["spinor"] = {{"type", "gaussian"},
                         {"amplitude", s.amplitude},
                         {"center", s.center},
                         {"width", s.width},
                         {"k_mod", s.k_mod}};
          break;
        case SpinorDataConfig::Kind::Rough:
          d["spinor"] = {{"type", "rough"}, {"amplitude", s.amplitude}, {"s", s.s}};
          break;
      }
    }
    if (c.wave) {
      const auto& w = *c.wave;
      switch (w.kind) {
        case WaveDataConfig::Kind::Zero:
          d["wave"] = {{"type", "zero"}};
          break;
        case WaveDataConfig::Kind::Gaussian:
          d["wave"] = {{"type", "gaussian"},
                       {"amplitude", w.amplitude},
                       {"center", w.center},
                       {"width", w.width}};
          break;
        case WaveDataConfig::Kind::Random:
          d["wave"] = {{"type", "random"}, {"amplitude", w.amplitude}, {"decay", w.decay}};
          break;
      }
    }
    j["data"] = d;
  }
  if (c.solver)
    j["solver"] = {{"T", c.solver->T},
                   {"dt", c.solver->dt},
                   {"record_every", c.solver->record_every},
                   {"dealias", c.solver->dealias}};
  if (c.split) {
    const char* p = c.split->picard == PicardCheck::None
                        ? "none"
                        : (c.split->picard == PicardCheck::First ? "first" : "all");
    j["split"] = {{"s", c.split->s}, {"r", c.split->r},   {"eps", c.split->eps},
                  {"N", c.split->N}, {"c0", c.split->c0}, {"T", c.split->T},
                  {"picard", p}};
  }
  if (c.sweep) j["sweep"] = {{"N", *c.sweep}};
  return j;
}

Grid make_grid(const RunConfig& c) {
  if (!c.grid) throw ConfigError("missing required field: grid");
  try {
    return Grid(c.grid->L, c.grid->n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

SpinorState build_spinor(const SpinorDataConfig& c, const Grid& g, std::uint64_t seed) {
  switch (c.kind) {
    case SpinorDataConfig::Kind::Zero:
      return SpinorState(g);
    case SpinorDataConfig::Kind::Gaussian: {
      // Two bump components with opposite modulation: nontrivial density and
      // content in both transport directions.
      SpectralField psi1 = gaussian_bump(g, c.center, c.width, c.amplitude, c.k_mod);
      SpectralField psi2 =
          gaussian_bump(g, c.center + 2.0 * c.width, c.width, 0.5 * c.amplitude, -c.k_mod);
      return to_eigenbasis(psi1, psi2);
    }
    case SpinorDataConfig::Kind::Rough:
    default: {
      RoughDataProfile profile{c.s, seed, c.amplitude};
      auto [psi1, psi2] = make_rough_spinor(profile, g);
      return to_eigenbasis(psi1, psi2);
    }
  }
}

WaveState build_wave(const WaveDataConfig& c, const Grid& g, std::uint64_t seed) {
  WaveState w(g);
  switch (c.kind) {
    case WaveDataConfig::Kind::Zero:
      break;
    case WaveDataConfig::Kind::Gaussian:
      w.phi = gaussian_bump(g, c.center, c.width, c.amplitude);
      break;
    case WaveDataConfig::Kind::Random:
      w.phi = random_real_field(g, seed + 101, c.decay, c.amplitude);
      w.phi_t = random_real_field(g, seed + 102, c.decay + 1.0, c.amplitude);
      break;
  }
  return w;
}

}  // namespace dkg::cli
