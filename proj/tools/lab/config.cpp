#include "lab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "parawave/errors.hpp"
#include "parawave/format.hpp"

namespace parawave::lab {

namespace {

struct ExperimentEntry {
  Experiment experiment;
  const char* name;
};

constexpr ExperimentEntry kExperiments[] = {
    {Experiment::dn_check, "dn_check"},
    {Experiment::paralin_order, "paralin_order"},
    {Experiment::symcalc_order, "symcalc_order"},
    {Experiment::parabolic_check, "parabolic_check"},
    {Experiment::taylor_check, "taylor_check"},
    {Experiment::dispersion, "dispersion"},
    {Experiment::evolve, "evolve"},
    {Experiment::contraction, "contraction"},
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigInvalid(key + " = '" + text + "': not a number");
  }
  if (used != text.size())
    throw ConfigInvalid(key + " = '" + text + "': trailing characters");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigInvalid(key + " = '" + text + "': not an integer");
  }
  if (used != text.size())
    throw ConfigInvalid(key + " = '" + text + "': trailing characters");
  return v;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

const char* bottom_name(BottomKind b) {
  return b == BottomKind::flat ? "flat" : "infinite";
}

const char* scenario_name(EvolveScenario s) {
  switch (s) {
    case EvolveScenario::all: return "all";
    case EvolveScenario::rest: return "rest";
    case EvolveScenario::traveling: return "traveling";
    case EvolveScenario::rough: return "rough";
  }
  return "all";
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "grid.dim") {
    cfg.dim = static_cast<int>(parse_integer(key, value));
  } else if (key == "grid.n") {
    cfg.n = static_cast<int>(parse_integer(key, value));
  } else if (key == "grid.length") {
    cfg.length = parse_number(key, value);
  } else if (key == "physics.gravity") {
    cfg.gravity = parse_number(key, value);
  } else if (key == "physics.depth") {
    cfg.depth = parse_number(key, value);
  } else if (key == "physics.bottom") {
    if (value == "flat") {
      cfg.bottom = BottomKind::flat;
    } else if (value == "infinite") {
      cfg.bottom = BottomKind::infinite;
    } else {
      throw ConfigInvalid("physics.bottom = '" + value +
                          "': expected 'flat' or 'infinite'");
    }
  } else if (key == "physics.epsilon") {
    cfg.epsilon = parse_number(key, value);
  } else if (key == "numerics.nz") {
    cfg.nz = static_cast<int>(parse_integer(key, value));
  } else if (key == "numerics.krylov_tol") {
    cfg.krylov_tol = parse_number(key, value);
  } else if (key == "numerics.cfl") {
    cfg.cfl = parse_number(key, value);
  } else if (key == "numerics.delta") {
    cfg.delta = value == "auto" ? 0.0 : parse_number(key, value);
  } else if (key == "run.seed") {
    const long long s = parse_integer(key, value);
    if (s < 0) throw ConfigInvalid("run.seed = '" + value + "': must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "run.output_dir") {
    cfg.output_dir = value;
  } else if (key == "evolve.scenario") {
    if (value == "all") {
      cfg.scenario = EvolveScenario::all;
    } else if (value == "rest") {
      cfg.scenario = EvolveScenario::rest;
    } else if (value == "traveling") {
      cfg.scenario = EvolveScenario::traveling;
    } else if (value == "rough") {
      cfg.scenario = EvolveScenario::rough;
    } else {
      throw ConfigInvalid("evolve.scenario = '" + value +
                          "': expected all, rest, traveling, or rough");
    }
  } else {
    throw ConfigInvalid("unknown config key '" + key + "'");
  }
}

}  // namespace

const char* experiment_name(Experiment e) {
  for (const auto& entry : kExperiments)
    if (entry.experiment == e) return entry.name;
  return "unknown";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& entry : kExperiments)
    if (name == entry.name) return entry.experiment;
  std::string known;
  for (const auto& entry : kExperiments) {
    if (!known.empty()) known += ", ";
    known += entry.name;
  }
  throw ConfigInvalid("unknown experiment '" + name + "' (expected one of: " +
                      known + ")");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> order = [] {
    std::vector<Experiment> v;
    for (const auto& entry : kExperiments) v.push_back(entry.experiment);
    return v;
  }();
  return order;
}

WaveParams ExperimentConfig::wave_params() const {
  WaveParams p;
  p.gravity = gravity;
  p.epsilon = epsilon;
  p.dn = dn_params();
  return p;
}

DnParams ExperimentConfig::dn_params() const {
  DnParams p;
  p.depth = depth;
  p.bottom = bottom;
  p.nz = nz;
  p.delta = delta;
  p.solver.tol = krylov_tol;
  return p;
}

void ExperimentConfig::validate() const {
  if (dim != 1 && dim != 2)
    throw ConfigInvalid("grid.dim = " + std::to_string(dim) +
                        ": must be 1 or 2");
  if (!is_power_of_two(n) || n < 16)
    throw ConfigInvalid("grid.n = " + std::to_string(n) +
                        ": must be a power of two >= 16");
  if (!(length > 0.0))
    throw ConfigInvalid("grid.length = " + format_double(length) +
                        ": must be positive");
  if (!(gravity > 0.0))
    throw ConfigInvalid("physics.gravity = " + format_double(gravity) +
                        ": must be positive");
  if (!(depth > 0.0))
    throw ConfigInvalid("physics.depth = " + format_double(depth) +
                        ": must be positive");
  if (!(epsilon >= 0.0))
    throw ConfigInvalid("physics.epsilon = " + format_double(epsilon) +
                        ": must be >= 0");
  if (nz < 4)
    throw ConfigInvalid("numerics.nz = " + std::to_string(nz) +
                        ": must be >= 4");
  if (!(krylov_tol > 0.0) || krylov_tol > 1e-2)
    throw ConfigInvalid("numerics.krylov_tol = " + format_double(krylov_tol) +
                        ": must be in (0, 1e-2]");
  if (!(cfl > 0.0) || cfl > 1.0)
    throw ConfigInvalid("numerics.cfl = " + format_double(cfl) +
                        ": must be in (0, 1]");
  if (!(delta >= 0.0))
    throw ConfigInvalid("numerics.delta = " + format_double(delta) +
                        ": must be >= 0 (0 = auto)");
  if (output_dir.empty())
    throw ConfigInvalid("run.output_dir: must be nonempty");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  switch (e) {
    case Experiment::dn_check:
      // The symmetry defect is measured against 1e-8; keep the iterative
      // solver floor well below it.
      cfg.krylov_tol = 1e-12;
      break;
    case Experiment::paralin_order:
      cfg.n = 256;
      cfg.nz = 64;
      break;
    case Experiment::symcalc_order:
      cfg.n = 256;
      break;
    case Experiment::parabolic_check:
      cfg.nz = 64;
      break;
    default:
      break;
  }
  return cfg;
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid(path + ":" + std::to_string(lineno) +
                          ": expected 'section.key = value', got '" +
                          stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      apply_key(cfg, key, value);
    } catch (const ConfigInvalid& e) {
      throw ConfigInvalid(path + ":" + std::to_string(lineno) + ": " +
                          e.what());
    }
  }
}

void apply_set_flag(ExperimentConfig& cfg, const std::string& spec) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigInvalid("--set '" + spec + "': expected section.key=value");
  apply_key(cfg, trim(spec.substr(0, eq)), trim(spec.substr(eq + 1)));
}

std::vector<std::pair<std::string, std::string>> config_items(
    const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> items;
  items.emplace_back("grid.dim", std::to_string(cfg.dim));
  items.emplace_back("grid.n", std::to_string(cfg.n));
  items.emplace_back("grid.length", format_double(cfg.length));
  items.emplace_back("physics.gravity", format_double(cfg.gravity));
  items.emplace_back("physics.depth", format_double(cfg.depth));
  items.emplace_back("physics.bottom", bottom_name(cfg.bottom));
  items.emplace_back("physics.epsilon", format_double(cfg.epsilon));
  items.emplace_back("numerics.nz", std::to_string(cfg.nz));
  items.emplace_back("numerics.krylov_tol", format_double(cfg.krylov_tol));
  items.emplace_back("numerics.cfl", format_double(cfg.cfl));
  items.emplace_back("numerics.delta",
                     cfg.delta == 0.0 ? "auto" : format_double(cfg.delta));
  items.emplace_back("run.seed", std::to_string(cfg.seed));
  items.emplace_back("run.output_dir", cfg.output_dir);
  if (cfg.experiment == Experiment::evolve)
    items.emplace_back("evolve.scenario", scenario_name(cfg.scenario));
  return items;
}

std::string config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# " << experiment_name(cfg.experiment) << " configuration\n";
  for (const auto& [key, value] : config_items(cfg))
    out << key << " = " << value << "\n";
  return out.str();
}

}  // namespace parawave::lab
