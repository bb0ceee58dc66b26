#pragma once

// JSON run configuration: model couplings (physical or spectral form),
// particle number, solver knobs, and output options.

#include "knm/bae.hpp"
#include "knm/model.hpp"

#include <stdexcept>
#include <string>

namespace knm {

struct OutputOptions {
  std::string format = "table";  // "table" or "json"
  std::string path;              // empty writes to stdout
};

struct RunConfig {
  CouplingParams model;
  int particles = 0;
  SolverConfig solver;
  OutputOptions output;
};

// Invalid or inconsistent configuration; maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

}  // namespace knm
