// Flat key-value run configuration: one documented schema shared by the CLI
// subcommands. CLI flags override file keys.
#pragma once

#include <string>

#include "qdeco/gaussian.hpp"
#include "qdeco/model.hpp"

namespace qdeco {

struct RunConfig {
  OscillatorParams params{};
  InitialStateSpec initial{};
  double t_final = 10.0;
  int samples = 201;
  bool oracle = false;
  int oracle_n = 60;
  std::string out_dir = ".";
};

/// Parses `key = value` lines ('#' starts a comment). Recognized keys:
/// mass, omega, lambda, mu, temperature | coth_epsilon, hbar, boltzmann,
/// delta, r, sigma_q0, sigma_p0, t_final, samples, oracle, oracle_n, out.
/// Throws ValidationError; constraint violations carry the constraint name.
RunConfig parse_config_text(const std::string& text);

RunConfig load_config(const std::string& path);

/// Full validation of a config (structural + bath constraints + ranges).
void validate(const RunConfig& config);

}  // namespace qdeco
