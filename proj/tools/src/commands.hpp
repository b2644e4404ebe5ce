#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace tcellsim::cli {

/// Deterministic ODE run; writes a trajectory CSV.
int cmd_run_ode(const RunConfig& cfg);

/// Stochastic ensemble run; writes an ensemble CSV.
int cmd_run_abm(const RunConfig& cfg);

/// Runs both engines on the shared grid and writes the comparison report
/// (human-readable table to stdout, JSON to the output path). Exits 0 when
/// the comparison completes; the report carries the pass/fail verdict.
int cmd_compare(const RunConfig& cfg);

/// Runs the ODE engine once per value of the swept key, writing one
/// trajectory CSV per value plus a feature summary table.
int cmd_sweep(const RunConfig& cfg, const std::string& param_key,
              const std::vector<double>& values);

/// Full command-line entry point (argument parsing, config resolution,
/// dispatch, exit-code mapping: 0 success, 1 runtime fault, 2 config or
/// usage error).
int run_cli(const std::vector<std::string>& args);

}  // namespace tcellsim::cli
