#pragma once

// Run configuration: a flat bag of tolerances, sizes and seeds with embedded
// defaults.  A config file supplies any subset of the keys; unknown keys are
// collected as warnings rather than errors so configs survive option
// renames in one direction.

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "folia/errors.hpp"

namespace folia {

struct Config {
  // tolerances
  double det_tol = 1e-12;
  double class_tol = 1e-9;
  double rel_tol = 1e-9;
  double prox_tol = 1e-6;
  double conv_tol = 1e-6;
  double const_tol = 1e-10;
  double sup_tol = 1e-6;
  double tail_tol = 1e-8;
  double cone_tol = 1e-12;
  double comp_bound = 1e3;

  // Taylor representation of Hol(D, Dbar)
  int taylor_degree = 64;
  double r_fit = 0.85;
  int fit_samples = 512;
  double r_check = 0.999;

  // finite differences
  double dbar_step = 1e-4;
  double lap_step = 1e-3;

  // dynamics
  int word_radius = 3;
  int probe_samples = 1000;
  int probe_iterations = 200;
  int orbit_bound = 512;
  int orbit_sequence_length = 40;

  // bundle sweeps and grids
  int invariance_samples = 10000;
  int constancy_samples = 16;
  int dbar_fibers = 24;
  int grid_n = 128;
  std::string grid_mode = "abs";  // "abs" or "arg"
  int max_steps = 10000;

  std::uint64_t seed = 1u;
  std::string out_dir = ".";

  std::vector<std::string> warnings;  // unknown config keys, if any
};

namespace detail {

template <class T>
inline void take(const nlohmann::json& j, const char* key, T& slot,
                 std::vector<std::string>& consumed) {
  if (j.contains(key)) {
    try {
      slot = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::ConfigError,
            std::string("config key '") + key + "': " + e.what());
    }
    consumed.push_back(key);
  }
}

}  // namespace detail

inline Config config_from_json(const nlohmann::json& j) {
  Config c;
  std::vector<std::string> consumed;
  detail::take(j, "det_tol", c.det_tol, consumed);
  detail::take(j, "class_tol", c.class_tol, consumed);
  detail::take(j, "rel_tol", c.rel_tol, consumed);
  detail::take(j, "prox_tol", c.prox_tol, consumed);
  detail::take(j, "conv_tol", c.conv_tol, consumed);
  detail::take(j, "const_tol", c.const_tol, consumed);
  detail::take(j, "sup_tol", c.sup_tol, consumed);
  detail::take(j, "tail_tol", c.tail_tol, consumed);
  detail::take(j, "cone_tol", c.cone_tol, consumed);
  detail::take(j, "comp_bound", c.comp_bound, consumed);
  detail::take(j, "taylor_degree", c.taylor_degree, consumed);
  detail::take(j, "r_fit", c.r_fit, consumed);
  detail::take(j, "fit_samples", c.fit_samples, consumed);
  detail::take(j, "r_check", c.r_check, consumed);
  detail::take(j, "dbar_step", c.dbar_step, consumed);
  detail::take(j, "lap_step", c.lap_step, consumed);
  detail::take(j, "word_radius", c.word_radius, consumed);
  detail::take(j, "probe_samples", c.probe_samples, consumed);
  detail::take(j, "probe_iterations", c.probe_iterations, consumed);
  detail::take(j, "orbit_bound", c.orbit_bound, consumed);
  detail::take(j, "orbit_sequence_length", c.orbit_sequence_length, consumed);
  detail::take(j, "invariance_samples", c.invariance_samples, consumed);
  detail::take(j, "constancy_samples", c.constancy_samples, consumed);
  detail::take(j, "dbar_fibers", c.dbar_fibers, consumed);
  detail::take(j, "grid_n", c.grid_n, consumed);
  detail::take(j, "grid_mode", c.grid_mode, consumed);
  detail::take(j, "max_steps", c.max_steps, consumed);
  detail::take(j, "seed", c.seed, consumed);
  detail::take(j, "out_dir", c.out_dir, consumed);

  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const auto& k : consumed) {
      if (k == key) {
        known = true;
        break;
      }
    }
    if (!known) c.warnings.push_back("unused config key '" + key + "'");
  }
  return c;
}

inline void validate(const Config& c) {
  const double tols[] = {c.det_tol, c.class_tol, c.rel_tol,  c.prox_tol,
                         c.conv_tol, c.const_tol, c.sup_tol,  c.tail_tol,
                         c.cone_tol, c.comp_bound};
  for (double t : tols) {
    if (!(t > 0)) raise(ErrorCode::ConfigError, "tolerances must be positive");
  }
  if (c.word_radius < 0 || c.word_radius > 12)
    raise(ErrorCode::ConfigError, "word_radius must lie in [0, 12]");
  if (c.taylor_degree < 1 || c.fit_samples < 2 * (c.taylor_degree + 1))
    raise(ErrorCode::ConfigError,
          "fit_samples must be at least twice the coefficient count");
  if (!(c.r_fit > 0 && c.r_fit < 1) || !(c.r_check > 0 && c.r_check < 1))
    raise(ErrorCode::ConfigError, "fit radii must lie in (0, 1)");
  if (c.grid_mode != "abs" && c.grid_mode != "arg")
    raise(ErrorCode::ConfigError, "grid_mode must be 'abs' or 'arg'");
  if (c.grid_n < 2 || c.grid_n > 4096)
    raise(ErrorCode::ConfigError, "grid_n must lie in [2, 4096]");
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ConfigError, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCode::ParseError,
          path + ": " + e.what() + " (byte " + std::to_string(e.byte) + ")");
  }
  Config c = config_from_json(j);
  validate(c);
  return c;
}

// the defaults (and any overrides) echoed into every report
inline nlohmann::json config_echo(const Config& c) {
  return nlohmann::json{{"det_tol", c.det_tol},
                        {"class_tol", c.class_tol},
                        {"rel_tol", c.rel_tol},
                        {"prox_tol", c.prox_tol},
                        {"conv_tol", c.conv_tol},
                        {"const_tol", c.const_tol},
                        {"sup_tol", c.sup_tol},
                        {"tail_tol", c.tail_tol},
                        {"cone_tol", c.cone_tol},
                        {"comp_bound", c.comp_bound},
                        {"taylor_degree", c.taylor_degree},
                        {"r_fit", c.r_fit},
                        {"fit_samples", c.fit_samples},
                        {"r_check", c.r_check},
                        {"dbar_step", c.dbar_step},
                        {"lap_step", c.lap_step},
                        {"word_radius", c.word_radius},
                        {"probe_samples", c.probe_samples},
                        {"probe_iterations", c.probe_iterations},
                        {"orbit_bound", c.orbit_bound},
                        {"orbit_sequence_length", c.orbit_sequence_length},
                        {"invariance_samples", c.invariance_samples},
                        {"constancy_samples", c.constancy_samples},
                        {"dbar_fibers", c.dbar_fibers},
                        {"grid_n", c.grid_n},
                        {"grid_mode", c.grid_mode},
                        {"max_steps", c.max_steps},
                        {"seed", c.seed}};
}

}  // namespace folia
