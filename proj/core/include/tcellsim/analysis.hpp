#pragma once

#include <optional>
#include <vector>

#include "tcellsim/abm.hpp"
#include "tcellsim/scenario.hpp"

namespace tcellsim {

/// Pass/fail envelope for the ODE-vs-ABM comparison: a point passes when
/// |err| <= max(rel_tol * |ode|, abs_tol).
struct ToleranceProfile {
    double rel_tol = 0.05;  ///< relative band
    double abs_tol = 5.0;   ///< absolute band, cells/mm^3
};

/// Error metrics of one compartment between ODE samples and ABM ensemble
/// means. Relative errors use max(|ode|, 1 cell/mm^3) denominators.
struct CompartmentError {
    double rmse = 0.0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;
    double t_at_max_abs = 0.0;
    bool pass = true;
};

struct ComparisonReport {
    CompartmentError n, n_p, a, m;
    bool pass = true;  ///< every compartment within the tolerance profile
};

/// Pointwise comparison of an ODE trajectory against ABM ensemble means.
/// Throws std::invalid_argument when the recording grids do not align
/// (same length, times within 1e-9); no resampling is attempted.
ComparisonReport compare(const Trajectory& ode, const EnsembleStats& abm,
                         const ToleranceProfile& tol = {});

/// Window for the late-life exponential fit and the drift ratio.
struct FeatureConfig {
    double fit_start = 40.0;  ///< years
    double fit_end = 90.0;    ///< years
};

/// Qualitative trajectory features. Optional fields are absent when the
/// feature does not occur (no crossover, no decay, window not covered).
struct FeatureReport {
    std::optional<double> crossover_age;        ///< first t with Np > N
    double thymic_peak_age = 0.0;               ///< argmax of N
    std::optional<double> late_decay_halflife;  ///< ln2 / |slope| of ln N fit
    std::optional<double> total_naive_drift;    ///< (N+Np)(end)/(N+Np)(start) - 1
};

/// Extracts features from a recorded trajectory. The half-life comes from
/// a least-squares line through ln N(t) over the samples inside the fit
/// window (absent when N <= 0 throughout or no decay is detected).
/// Requires a trajectory spanning at least 30 years.
FeatureReport extract_features(const Trajectory& traj, const FeatureConfig& cfg = {});

/// Memory extrapolation: the model's M(t) next to a rescaled
/// total-population estimate total(t) = A(t) / active_fraction and the
/// derived share M/total. estimated_total and memory_share stay empty when
/// A(t) = 0 everywhere (estimate_present = false); memory_share is NaN at
/// points where the estimate is zero.
struct MemoryEstimate {
    std::vector<double> t;
    std::vector<double> model_memory;
    std::vector<double> estimated_total;
    std::vector<double> memory_share;
    bool estimate_present = false;
};

/// Requires 0 < active_fraction < 1. estimated_total is computed as
/// A * (1 / active_fraction), exactly linear in 1 / active_fraction.
MemoryEstimate memory_estimate(const Trajectory& traj, double active_fraction = 0.1);

}  // namespace tcellsim
