#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "lab/config.hpp"
#include "lab/experiments.hpp"
#include "lab/report.hpp"
#include "parawave/errors.hpp"

using namespace parawave;
using namespace parawave::lab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

const char* kOutDir = "labcli_test_out";

}  // namespace

TEST_CASE("experiment names round-trip") {
  for (Experiment e : all_experiments())
    CHECK(parse_experiment(experiment_name(e)) == e);
  CHECK_THROWS_AS(parse_experiment("dn_chek"), ConfigInvalid);
}

TEST_CASE("defaults pin the per-experiment resolution") {
  CHECK(default_config(Experiment::dn_check).krylov_tol == 1e-12);
  CHECK(default_config(Experiment::paralin_order).n == 256);
  CHECK(default_config(Experiment::paralin_order).nz == 64);
  CHECK(default_config(Experiment::parabolic_check).nz == 64);
  CHECK(default_config(Experiment::taylor_check).n == 128);
}

TEST_CASE("set flags override fields and reject junk") {
  ExperimentConfig cfg = default_config(Experiment::dn_check);
  apply_set_flag(cfg, "grid.n=256");
  CHECK(cfg.n == 256);
  apply_set_flag(cfg, "physics.bottom = infinite");
  CHECK(cfg.bottom == BottomKind::infinite);
  apply_set_flag(cfg, "numerics.delta=auto");
  CHECK(cfg.delta == 0.0);
  apply_set_flag(cfg, "numerics.delta=0.05");
  CHECK(cfg.delta == 0.05);
  apply_set_flag(cfg, "evolve.scenario=rough");
  CHECK(cfg.scenario == EvolveScenario::rough);

  CHECK_THROWS_WITH_AS(apply_set_flag(cfg, "grid.m=32"),
                       doctest::Contains("grid.m"), ConfigInvalid);
  CHECK_THROWS_AS(apply_set_flag(cfg, "no_equals_sign"), ConfigInvalid);
  CHECK_THROWS_AS(apply_set_flag(cfg, "grid.n=abc"), ConfigInvalid);
  CHECK_THROWS_AS(apply_set_flag(cfg, "physics.bottom=sloped"),
                  ConfigInvalid);
}

TEST_CASE("config files parse with comments and later lines win") {
  const std::string path = temp_file("parawave_labcli_config_ok.cfg",
                                     "# comment line\n"
                                     "grid.n = 64   # trailing comment\n"
                                     "\n"
                                     "physics.gravity = 2.5\n"
                                     "grid.n = 32\n");
  ExperimentConfig cfg = default_config(Experiment::dn_check);
  apply_config_file(cfg, path);
  CHECK(cfg.n == 32);
  CHECK(cfg.gravity == 2.5);

  const std::string bad = temp_file("parawave_labcli_config_bad.cfg",
                                    "grid.n = 64\nnot a key value line\n");
  ExperimentConfig cfg2 = default_config(Experiment::dn_check);
  CHECK_THROWS_WITH_AS(apply_config_file(cfg2, bad), doctest::Contains(":2"),
                       ConfigInvalid);
  CHECK_THROWS_AS(apply_config_file(cfg2, "/nonexistent/path.cfg"),
                  ConfigInvalid);
}

TEST_CASE("validation names the offending field") {
  ExperimentConfig cfg = default_config(Experiment::dn_check);
  cfg.n = 100;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid.n"),
                       ConfigInvalid);
  cfg.n = 128;
  cfg.dim = 3;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid.dim"),
                       ConfigInvalid);
  cfg.dim = 1;
  cfg.cfl = 1.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("numerics.cfl"),
                       ConfigInvalid);
  cfg.cfl = 0.5;
  cfg.krylov_tol = 0.0;
  CHECK_THROWS_WITH_AS(cfg.validate(),
                       doctest::Contains("numerics.krylov_tol"),
                       ConfigInvalid);
  cfg.krylov_tol = 1e-10;
  cfg.output_dir.clear();
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("run.output_dir"),
                       ConfigInvalid);
}

TEST_CASE("effective config text reproduces the configuration") {
  ExperimentConfig cfg = default_config(Experiment::evolve);
  cfg.n = 64;
  cfg.bottom = BottomKind::infinite;
  cfg.scenario = EvolveScenario::traveling;
  cfg.krylov_tol = 1e-11;
  const std::string path =
      temp_file("parawave_labcli_roundtrip.cfg", config_text(cfg));
  ExperimentConfig back = default_config(Experiment::evolve);
  apply_config_file(back, path);
  CHECK(config_items(back) == config_items(cfg));
}

TEST_CASE("csv writers are deterministic down to the byte") {
  const Grid g(1, 16);
  const Field f = Field::sample(g, [](double x, double) { return x * x; });
  const std::string p1 = std::string(kOutDir) + "/field_a.csv";
  const std::string p2 = std::string(kOutDir) + "/field_b.csv";
  write_field_csv(p1, f);
  write_field_csv(p2, f);
  const std::string bytes = slurp(p1);
  CHECK(bytes == slurp(p2));
  CHECK(bytes.substr(0, 8) == "x,value\n");
  CHECK(bytes.find("0,0\n") == 8);  // first grid point is the origin

  const std::string tp = std::string(kOutDir) + "/table.csv";
  write_table_csv(tp, {"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}});
  CHECK(slurp(tp) == "a,b\n1,0.5\n2,0.25\n");

  const std::string sp = std::string(kOutDir) + "/spec.csv";
  write_spectrum_csv(sp, Field::constant(g, 3.0));
  CHECK(slurp(sp).substr(0, 9) == "kx,re,im\n");
  CHECK(slurp(sp).find("0,3,0\n") == 9);
}

TEST_CASE("reports serialize and golden comparison flags drift") {
  ExperimentConfig cfg = default_config(Experiment::parabolic_check);
  cfg.output_dir = kOutDir;
  RunReport rep;
  rep.config = cfg;
  rep.add("fitted_slope", 1.05, 0.02);
  rep.add("floor_level", 3e-11, 1e-8);
  rep.criterion("slope bounded", true, "1.05 <= 1.2");
  rep.wall_ms = 12.5;

  const std::string json = rep.to_json();
  CHECK(json.find("\"fitted_slope\"") != std::string::npos);
  CHECK(json.find("\"pass\": true") != std::string::npos);
  CHECK(rep.find("fitted_slope").value == 1.05);
  CHECK(rep.all_pass());

  const std::string golden = std::string(kOutDir) + "/golden.json";
  std::filesystem::remove(golden);
  // First contact requires --bless.
  CHECK_THROWS_AS(compare_golden(rep, golden, false), ConfigInvalid);
  CHECK(compare_golden(rep, golden, true).size() == 1);
  CHECK(compare_golden(rep, golden, false).empty());

  // Float drift inside the per-field tolerance is reported, not fatal.
  RunReport close = rep;
  close.measured[1].value = 6e-11;
  const auto diff = compare_golden(close, golden, false);
  REQUIRE(diff.size() == 1);
  CHECK(diff[0].find("floor_level") != std::string::npos);

  // A perturbed slope is a mismatch naming the field.
  RunReport off = rep;
  off.measured[0].value = 1.55;
  CHECK_THROWS_WITH_AS(compare_golden(off, golden, false),
                       doctest::Contains("fitted_slope"), GoldenMismatch);

  // A changed verdict is a mismatch even with identical numbers.
  RunReport flipped = rep;
  flipped.criteria[0].pass = false;
  CHECK_THROWS_AS(compare_golden(flipped, golden, false), GoldenMismatch);

  // A changed configuration is a mismatch: the echo is part of the golden.
  RunReport moved = rep;
  moved.config.n = 64;
  CHECK_THROWS_WITH_AS(compare_golden(moved, golden, false),
                       doctest::Contains("config.grid.n"), GoldenMismatch);
  // Output location is machine-local and exempt.
  RunReport relocated = rep;
  relocated.config.output_dir = "elsewhere";
  CHECK(compare_golden(relocated, golden, false).empty());
}

TEST_CASE("experiment runner writes a self-contained report") {
  ExperimentConfig cfg = default_config(Experiment::parabolic_check);
  cfg.n = 64;
  cfg.nz = 16;
  cfg.output_dir = std::string(kOutDir) + "/parabolic";
  const RunReport rep = lab::run(cfg);
  CHECK(rep.criteria.size() == 2);
  CHECK(rep.all_pass());
  CHECK(rep.wall_ms > 0.0);
  for (const auto& artifact : rep.artifacts)
    CHECK(std::filesystem::exists(artifact));
  CHECK(std::filesystem::exists(cfg.output_dir +
                                "/parabolic_check_report.json"));

  // Identical config and seed: byte-identical artifacts.
  ExperimentConfig cfg2 = cfg;
  cfg2.output_dir = std::string(kOutDir) + "/parabolic_again";
  const RunReport rep2 = lab::run(cfg2);
  REQUIRE(rep.artifacts.size() == rep2.artifacts.size());
  for (std::size_t i = 0; i < rep.artifacts.size(); ++i) {
    if (rep.artifacts[i].find(".config") != std::string::npos) continue;
    CHECK(slurp(rep.artifacts[i]) == slurp(rep2.artifacts[i]));
  }

  // The echoed config artifact re-runs the experiment.
  ExperimentConfig echoed = default_config(Experiment::parabolic_check);
  apply_config_file(echoed, cfg.output_dir + "/parabolic_check.config");
  CHECK(echoed.n == cfg.n);
  CHECK(echoed.nz == cfg.nz);
}

TEST_CASE("invalid configuration is rejected before any work") {
  ExperimentConfig cfg = default_config(Experiment::dn_check);
  cfg.n = 100;
  CHECK_THROWS_WITH_AS(lab::run(cfg), doctest::Contains("grid.n"),
                       ConfigInvalid);
}
