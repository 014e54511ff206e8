#pragma once

#include "pendcart/design_params.hpp"
#include "pendcart/digital_loop.hpp"
#include "pendcart/sim_engine.hpp"

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pendcart {

// Configuration error with source position; formatted as
// "file:line: message (field 'key' in [section])".
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& file, int line, const std::string& field,
              const std::string& message);
  std::string file;
  int line;
  std::string field;
};

// Fully resolved run configuration.
struct RunConfig {
  PlantParams plant{};
  DesignParams design{};
  // Discrete side: either the default/preset gain matrix or one recomputed
  // from user-supplied continuous observer poles.
  Mat42 G_d;
  std::vector<std::complex<double>> observer_poles;  // empty = use G_d
  Scenario scenario{};
  std::string out_path;  // empty = derive from preset/output dir
  std::string preset;    // fig2..fig7 if given

  RunConfig();

  // DiscreteGains at the scenario's tau (A_d/B_d computed; G_d resolved).
  DiscreteGains resolve_discrete() const;
};

// Apply a named preset: experiment presets fig2..fig7 (controller, mode,
// initial condition), design preset "paper-2000", discrete preset
// "paper-sec3". Throws std::invalid_argument for unknown names.
void apply_preset(RunConfig& cfg, const std::string& name);
std::vector<std::string> preset_names();

// Parse the key = value / [section] / bracketed-matrix-literal format.
// Throws ConfigError with file/line/field diagnostics.
RunConfig parse_config(std::istream& in, const std::string& filename);
RunConfig load_config_file(const std::string& path);

}  // namespace pendcart
