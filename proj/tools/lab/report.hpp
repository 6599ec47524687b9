#pragma once

#include <string>
#include <vector>

#include "lab/config.hpp"
#include "parawave/field.hpp"

namespace parawave::lab {

// One measured quantity with the tolerance a golden comparison should use
// for it. Comparison passes when |new - old| <= tol_abs + tol_rel * scale.
struct Measured {
  std::string name;
  double value = 0.0;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
};

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Self-contained record of one experiment run: the effective configuration
// (re-runnable as a config file), every measured quantity, the pass/fail
// verdicts, and the artifact paths.
struct RunReport {
  ExperimentConfig config;
  std::vector<Measured> measured;
  std::vector<CriterionResult> criteria;
  std::vector<std::string> artifacts;
  double wall_ms = 0.0;

  void add(const std::string& name, double value, double tol_abs,
           double tol_rel = 0.0);
  void criterion(const std::string& name, bool pass, const std::string& detail);
  const Measured& find(const std::string& name) const;

  bool all_pass() const;
  std::string to_json() const;
};

// CSV artifacts; all numbers go through format_double so identical runs
// produce byte-identical files.
void write_field_csv(const std::string& path, const Field& f);
void write_spectrum_csv(const std::string& path, const Field& f);
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);
void write_text(const std::string& path, const std::string& text);

// Field-by-field numeric comparison against a stored report using each
// field's own tolerance. With bless the golden file is rewritten and the
// diff is empty. Returns one line per compared field that differed but was
// within tolerance; throws GoldenMismatch listing fields out of tolerance.
std::vector<std::string> compare_golden(const RunReport& report,
                                        const std::string& golden_path,
                                        bool bless);

}  // namespace parawave::lab
