#pragma once

#include "iongate/config.hpp"

namespace iongate {

// Subcommand bodies. Each one computes everything first and only then
// writes its files (or stdout when config.out is empty), so failures never
// leave a partial mandatory output behind with a success exit. Errors
// surface as ConfigError / PhysicsError; the CLI maps them to exit codes.

// Eight per-mode, per-state displacement/phase CSVs plus the differential
// phase accumulation series, written into the directory config.out.
void run_trajectory(const RunConfig& config);

// Key/value design report with the infidelity breakdown.
void run_design(const RunConfig& config);

// Wavelength sweep CSV, rows in grid order.
void run_sweep(const RunConfig& config);

// Key/value error-budget report, one section per noise channel plus the
// spin-echo simulation.
void run_errors(const RunConfig& config);

} // namespace iongate
