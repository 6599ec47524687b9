// Acceptance suite: every shipped claim, one verdict line per criterion.
// Experiments run once at their pinned default configurations and are
// shared by the criteria they cover.

#include <cstdio>
#include <map>
#include <string>

#include "doctest.h"
#include "lab/experiments.hpp"

using namespace parawave;
using namespace parawave::lab;

namespace {

const RunReport& report_for(Experiment e,
                            EvolveScenario sc = EvolveScenario::all) {
  static std::map<std::string, RunReport> cache;
  std::string key = experiment_name(e);
  if (e == Experiment::evolve) {
    key += sc == EvolveScenario::rest        ? "_rest"
           : sc == EvolveScenario::traveling ? "_traveling"
                                             : "_rough";
  }
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExperimentConfig cfg = default_config(e);
    cfg.scenario = sc;
    cfg.output_dir = "acceptance_out/" + key;
    it = cache.emplace(key, lab::run(cfg)).first;
  }
  return it->second;
}

const CriterionResult& criterion(const RunReport& rep,
                                 const std::string& name) {
  for (const auto& c : rep.criteria)
    if (c.name == name) return c;
  static CriterionResult missing{"missing", false, "criterion not in report"};
  missing.name = name + " (missing)";
  return missing;
}

bool announce(int number, const char* label, const RunReport& rep,
              const std::string& criterion_name, double budget_seconds) {
  const auto& c = criterion(rep, criterion_name);
  std::printf("[criterion %02d] %-46s %s  (%s; %.1f s of %.0f s budget)\n",
              number, label, c.pass ? "PASS" : "FAIL", c.detail.c_str(),
              rep.wall_ms / 1000.0, budget_seconds);
  std::fflush(stdout);
  return c.pass && rep.wall_ms <= budget_seconds * 1000.0;
}

}  // namespace

TEST_CASE("criterion 01: flat-surface trace oracle") {
  const auto& rep = report_for(Experiment::dn_check);
  CHECK(announce(1, "flat-surface trace oracle", rep, "flat-surface oracle",
                 95));
}

TEST_CASE("criterion 02: operator symmetry and positivity") {
  const auto& rep = report_for(Experiment::dn_check);
  CHECK(announce(2, "operator symmetry", rep, "operator symmetry", 95));
  CHECK(criterion(rep, "quadratic form nonnegative").pass);
}

TEST_CASE("criterion 03: paralinearization order gain") {
  const auto& rep = report_for(Experiment::paralin_order);
  CHECK(announce(3, "paralinearization order gain", rep,
                 "paralinearization remainder gains a quarter derivative",
                 60));
  CHECK(criterion(rep, "full operator is first order").pass);
}

TEST_CASE("criterion 04: symbolic calculus remainders") {
  const auto& rep = report_for(Experiment::symcalc_order);
  CHECK(announce(4, "symbolic calculus remainders", rep,
                 "composition remainder loses a derivative", 30));
  CHECK(criterion(rep, "adjoint remainder loses a derivative").pass);
}

TEST_CASE("criterion 05: parabolic semigroup oracle") {
  const auto& rep = report_for(Experiment::parabolic_check);
  CHECK(announce(5, "parabolic semigroup oracle", rep,
                 "constant-symbol semigroup", 10));
  CHECK(criterion(rep, "variable-coefficient refinement").pass);
}

TEST_CASE("criterion 06: taylor coefficient cross-check") {
  const auto& rep = report_for(Experiment::taylor_check);
  CHECK(announce(6, "taylor coefficient cross-check", rep,
                 "independent routes agree", 60));
  CHECK(criterion(rep, "rest coefficient equals gravity").pass);
}

TEST_CASE("criterion 07: linear dispersion frequency") {
  const auto& rep = report_for(Experiment::dispersion);
  CHECK(announce(7, "linear dispersion frequency", rep,
                 "linear dispersion frequency", 30));
}

TEST_CASE("criterion 08: hamiltonian drift over a period") {
  const auto& rep =
      report_for(Experiment::evolve, EvolveScenario::traveling);
  CHECK(announce(8, "hamiltonian drift over a period", rep,
                 "hamiltonian conserved over a period", 60));
}

TEST_CASE("criterion 09: symmetrized energy boundedness") {
  const auto& rep =
      report_for(Experiment::evolve, EvolveScenario::traveling);
  CHECK(announce(9, "symmetrized energy boundedness", rep,
                 "symmetrized energy grows at most linearly", 60));
}

TEST_CASE("criterion 10: shape lipschitz stability") {
  const auto& rep = report_for(Experiment::dn_check);
  CHECK(announce(10, "shape lipschitz stability", rep,
                 "shape lipschitz ratios agree", 95));
}

TEST_CASE("criterion 11: rough-data viability") {
  const auto& rep = report_for(Experiment::evolve, EvolveScenario::rough);
  CHECK(announce(11, "rough-data viability", rep,
                 "rough data remains viable", 120));
}

TEST_CASE("criterion 12: regularization consistency") {
  const auto& rep = report_for(Experiment::contraction);
  CHECK(announce(12, "regularization consistency", rep,
                 "regularization gap bounded linearly", 120));
  CHECK(criterion(rep, "regularization gap monotone in epsilon").pass);
}

TEST_CASE("example: rest state evolution is inert") {
  const auto& rep = report_for(Experiment::evolve, EvolveScenario::rest);
  const auto& c = criterion(rep, "rest state stays at rest");
  std::printf("[example    ] %-46s %s  (%s)\n", "rest state evolution",
              c.pass ? "PASS" : "FAIL", c.detail.c_str());
  CHECK(c.pass);
}
