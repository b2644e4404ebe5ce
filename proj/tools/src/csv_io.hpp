#pragma once

#include <string>

#include "tcellsim/abm.hpp"
#include "tcellsim/analysis.hpp"
#include "tcellsim/scenario.hpp"

namespace tcellsim::cli {

/// Shortest-exact serialization of a double (17 significant digits, C
/// locale, '.' decimal point). parse(format(x)) == x bit-for-bit.
std::string format_double(double value);

/// Trajectory CSV: header `t,N,Np,A,M,total_naive`, LF newlines.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reads a trajectory CSV back; the derived total_naive column is
/// checked for presence but not stored. Engine/scenario metadata is not
/// serialized, so the result carries defaults for those fields.
Trajectory read_trajectory_csv(const std::string& path);

/// Ensemble CSV: per compartment (and total_naive) the `_mean`, `_var`,
/// `_min`, `_max` columns on the shared recording grid.
std::string ensemble_csv(const EnsembleStats& stats);
void write_ensemble_csv(const EnsembleStats& stats, const std::string& path);
EnsembleStats read_ensemble_csv(const std::string& path);

/// Machine-readable comparison report (JSON).
std::string comparison_json(const ComparisonReport& report,
                            const ToleranceProfile& tol);
void write_comparison_json(const ComparisonReport& report,
                           const ToleranceProfile& tol, const std::string& path);

/// Human-readable comparison table.
std::string comparison_table(const ComparisonReport& report);

}  // namespace tcellsim::cli
