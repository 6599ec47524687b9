#pragma once

#include "lab/config.hpp"
#include "lab/report.hpp"

namespace parawave::lab {

// Executes the configured experiment, writes its CSV artifacts, the report
// JSON, and the effective config under config.output_dir, and returns the
// report. Deterministic given config + seed. Throws ConfigInvalid for a bad
// configuration; solver-level failures propagate unless the experiment's
// own contract is "the run completes", in which case they fail that
// criterion instead.
RunReport run(const ExperimentConfig& config);

}  // namespace parawave::lab
