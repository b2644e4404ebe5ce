#pragma once

#include <cstdint>
#include <vector>

#include "tcellsim/state.hpp"

namespace tcellsim {

/// Integration horizon, step size and initial condition shared by both
/// engines. record_every counts ODE steps between recorded samples; the
/// stochastic engine records on the same time grid (see abm.hpp).
struct Scenario {
    double t_start = 0.0;           ///< years
    double t_end = 100.0;           ///< years
    double dt = 0.01;               ///< ODE step, years
    std::int64_t record_every = 10; ///< steps per recorded sample, >= 1
    StateVector initial_state{0.0, 2000.0, 0.0, 0.0, 0.0};

    /// Time between recorded samples.
    double record_interval() const { return dt * static_cast<double>(record_every); }

    /// Throws std::invalid_argument on violated invariants.
    void validate() const;
};

/// Lifespan run: 100 years from 2000 thymic-naive cells per mm^3, no
/// proliferated/active/memory cells at birth.
Scenario default_scenario();

/// Safety cap on steps per run; scenarios above it are rejected up front.
inline constexpr std::int64_t kMaxSteps = 200'000'000;

namespace detail {

/// Steps needed to cover [t_start, t_end] at the given step size (the
/// final step may be shorter). Throws std::invalid_argument above
/// kMaxSteps.
std::int64_t checked_step_count(double t_start, double t_end, double dt);

}  // namespace detail

enum class Engine { ode, abm };

/// Ordered time series recorded by one simulation run. Samples are
/// strictly increasing in t; the first sample equals the initial state.
struct Trajectory {
    Engine engine = Engine::ode;
    Scenario scenario;
    std::vector<StateVector> samples;
    std::uint64_t clamp_count = 0;  ///< negative-value clamps (ODE engine)
};

}  // namespace tcellsim
