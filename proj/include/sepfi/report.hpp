#pragma once

#include <ostream>

#include "sepfi/estimator_sim.hpp"
#include "sepfi/sweep.hpp"

namespace sepfi {

/// Writes the Monte Carlo summary, optionally followed by one record per trial.
/// Output is a pure function of the report, so a fixed seed reproduces it byte for byte.
void write_sim_report(const CrbReport& report, OutputFormat format, bool per_trial, std::ostream& out);

}  // namespace sepfi
