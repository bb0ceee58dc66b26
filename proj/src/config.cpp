#include "knm/config.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace knm {

namespace {

using nlohmann::json;

const json& require_key(const json& j, const std::string& key,
                        const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError("config: missing required key \"" + key + "\" in " + where);
  }
  return *it;
}

double as_number(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError("config: \"" + name + "\" must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& name) {
  if (!j.is_number_integer()) {
    throw ConfigError("config: \"" + name + "\" must be an integer");
  }
  return j.get<int>();
}

RealVector as_vector(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("config: \"" + name + "\" must be a non-empty array of numbers");
  }
  RealVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    v[static_cast<int>(i)] = as_number(j[i], name);
  }
  return v;
}

RunConfig from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig cfg;

  const json& model = require_key(root, "model", "the top-level object");
  if (!model.is_object()) throw ConfigError("config: \"model\" must be an object");

  const int n = as_int(require_key(model, "n", "\"model\""), "n");
  const int m = as_int(require_key(model, "m", "\"model\""), "m");
  cfg.particles = as_int(require_key(model, "particles", "\"model\""), "particles");
  if (cfg.particles < 1) throw ConfigError("config: \"particles\" must be >= 1");
  const double t = as_number(require_key(model, "t", "\"model\""), "t");
  RealVector alpha = as_vector(require_key(model, "alpha", "\"model\""), "alpha");
  RealVector beta = as_vector(require_key(model, "beta", "\"model\""), "beta");

  const bool physical = model.contains("U") || model.contains("mu");
  const bool spectral = model.contains("eta") || model.contains("omega");
  if (physical && spectral) {
    throw ConfigError(
        "config: give the couplings either as (U, mu) or as (eta, omega), not both");
  }
  if (!physical && !spectral) {
    throw ConfigError("config: couplings require (U, mu) or (eta, omega)");
  }

  try {
    if (physical) {
      const double U = as_number(require_key(model, "U", "\"model\""), "U");
      const double mu = as_number(require_key(model, "mu", "\"model\""), "mu");
      cfg.model = make_params_physical(n, m, U, mu, t, std::move(alpha),
                                       std::move(beta));
      to_spectral(cfg.model);  // reject couplings without a spectral form
    } else {
      const double eta = as_number(require_key(model, "eta", "\"model\""), "eta");
      const double omega =
          as_number(require_key(model, "omega", "\"model\""), "omega");
      if (eta <= 0.0) throw ConfigError("config: \"eta\" must be positive");
      cfg.model = make_params_spectral(n, m, eta, omega, t, std::move(alpha),
                                       std::move(beta));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (root.contains("solver")) {
    const json& s = root["solver"];
    if (!s.is_object()) throw ConfigError("config: \"solver\" must be an object");
    if (s.contains("max_starts")) {
      cfg.solver.max_starts = as_int(s["max_starts"], "max_starts");
      if (cfg.solver.max_starts < 1) {
        throw ConfigError("config: \"max_starts\" must be >= 1");
      }
    }
    if (s.contains("newton_tol")) {
      cfg.solver.newton_tol = as_number(s["newton_tol"], "newton_tol");
      if (cfg.solver.newton_tol <= 0) {
        throw ConfigError("config: \"newton_tol\" must be positive");
      }
    }
    if (s.contains("max_iter")) {
      cfg.solver.max_iter = as_int(s["max_iter"], "max_iter");
      if (cfg.solver.max_iter < 1) throw ConfigError("config: \"max_iter\" must be >= 1");
    }
    if (s.contains("dedup_tol")) {
      cfg.solver.dedup_tol = as_number(s["dedup_tol"], "dedup_tol");
      if (cfg.solver.dedup_tol <= 0) {
        throw ConfigError("config: \"dedup_tol\" must be positive");
      }
    }
    if (s.contains("classify_tol")) {
      cfg.solver.classify_tol = as_number(s["classify_tol"], "classify_tol");
      if (cfg.solver.classify_tol <= 0) {
        throw ConfigError("config: \"classify_tol\" must be positive");
      }
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_integer()) {
        throw ConfigError("config: \"seed\" must be an integer");
      }
      cfg.solver.seed = s["seed"].get<std::uint64_t>();
    }
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) throw ConfigError("config: \"output\" must be an object");
    if (o.contains("format")) {
      if (!o["format"].is_string()) {
        throw ConfigError("config: \"format\" must be a string");
      }
      cfg.output.format = o["format"].get<std::string>();
      if (cfg.output.format != "table" && cfg.output.format != "json") {
        throw ConfigError("config: \"format\" must be \"table\" or \"json\"");
      }
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw ConfigError("config: \"path\" must be a string");
      cfg.output.path = o["path"].get<std::string>();
    }
  }

  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace knm
