#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parawave/traces.hpp"

namespace parawave::lab {

enum class Experiment {
  dn_check,
  paralin_order,
  symcalc_order,
  parabolic_check,
  taylor_check,
  dispersion,
  evolve,
  contraction,
};

const char* experiment_name(Experiment e);
// Throws ConfigInvalid for an unknown name.
Experiment parse_experiment(const std::string& name);
const std::vector<Experiment>& all_experiments();

// Which part of the evolution suite to run; only the evolve experiment
// consults it.
enum class EvolveScenario { all, rest, traveling, rough };

// Flat key-value configuration. Keys mirror the config-file syntax
// `section.key = value`; see config_keys() for the full schema.
struct ExperimentConfig {
  Experiment experiment = Experiment::dn_check;

  int dim = 1;
  int n = 128;
  double length = 1.0;

  double gravity = 1.0;
  double depth = 1.0;
  BottomKind bottom = BottomKind::flat;
  double epsilon = 0.0;

  int nz = 32;
  double krylov_tol = 1e-10;
  double cfl = 0.5;
  double delta = 0.0;  // 0 = automatic smoothing scale

  std::uint64_t seed = 42;
  std::string output_dir = "out";

  EvolveScenario scenario = EvolveScenario::all;

  WaveParams wave_params() const;
  DnParams dn_params() const;

  // Throws ConfigInvalid naming the offending field.
  void validate() const;
};

// Baseline configuration with the resolution each experiment is specified
// at (e.g. the parabolic check wants nz = 64).
ExperimentConfig default_config(Experiment e);

// Applies a config file: one `section.key = value` per line, `#` comments,
// later lines win. Throws ConfigInvalid with the file/line context.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

// Applies one `section.key=value` override (the --set flag).
void apply_set_flag(ExperimentConfig& cfg, const std::string& spec);

// The effective configuration in config-file syntax: feeding this back via
// --config reproduces the run.
std::string config_text(const ExperimentConfig& cfg);

// Ordered (key, value-as-text) pairs of the effective configuration.
std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& cfg);

}  // namespace parawave::lab
