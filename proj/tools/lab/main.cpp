#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lab/experiments.hpp"
#include "parawave/errors.hpp"
#include "parawave/format.hpp"

namespace {

using namespace parawave;
using namespace parawave::lab;

void print_report(const RunReport& rep) {
  std::printf("experiment %s (%.1f ms)\n",
              experiment_name(rep.config.experiment), rep.wall_ms);
  for (const auto& c : rep.criteria)
    std::printf("  [%s] %s: %s\n", c.pass ? "pass" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  for (const auto& m : rep.measured)
    std::printf("  %s = %s\n", m.name.c_str(),
                format_double(m.value).c_str());
  for (const auto& a : rep.artifacts)
    std::printf("  wrote %s\n", a.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parawave: pseudo-spectral water-wave laboratory"};
  std::string experiment;
  std::string config_file;
  std::string golden_file;
  bool bless = false;
  std::vector<std::string> overrides;

  std::string names;
  for (Experiment e : all_experiments()) {
    if (!names.empty()) names += ", ";
    names += experiment_name(e);
  }
  app.add_option("experiment", experiment, "one of: " + names)->required();
  app.add_option("--config", config_file,
                 "config file (section.key = value lines)");
  app.add_option("--set", overrides, "override one section.key=value");
  app.add_option("--golden", golden_file,
                 "compare the report against this golden file");
  app.add_flag("--bless", bless, "rewrite the golden file from this run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg = default_config(parse_experiment(experiment));
    if (!config_file.empty()) apply_config_file(cfg, config_file);
    for (const auto& spec : overrides) apply_set_flag(cfg, spec);
    if (const char* env_out = std::getenv("PARAWAVE_OUT"))
      cfg.output_dir = env_out;
    if (bless && golden_file.empty())
      throw ConfigInvalid("--bless requires --golden");
    cfg.validate();

    const RunReport rep = lab::run(cfg);
    print_report(rep);

    if (!golden_file.empty()) {
      for (const auto& line : compare_golden(rep, golden_file, bless))
        std::printf("  golden: %s\n", line.c_str());
      std::printf("  golden comparison ok (%s)\n", golden_file.c_str());
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const GoldenMismatch& e) {
    std::fprintf(stderr, "golden mismatch: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
}
