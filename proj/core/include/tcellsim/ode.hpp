#pragma once

#include <cstdint>
#include <stdexcept>

#include "tcellsim/params.hpp"
#include "tcellsim/rates.hpp"
#include "tcellsim/scenario.hpp"

namespace tcellsim {

/// A step produced a non-finite compartment value; the message names the
/// compartment and the time of the failure.
class IntegrationFault : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Classical RK4 over an arbitrary right-hand side f(StateVector) ->
/// StateDerivative. No clamping, no finiteness checks.
template <class Deriv>
StateVector rk4_step(const StateVector& s, double dt, Deriv&& f) {
    auto advanced = [&](double frac, const StateDerivative& k) {
        return StateVector{s.t + frac * dt,
                           s.n + frac * dt * k.dn,
                           s.n_p + frac * dt * k.dn_p,
                           s.a + frac * dt * k.da,
                           s.m + frac * dt * k.dm};
    };
    const StateDerivative k1 = f(s);
    const StateDerivative k2 = f(advanced(0.5, k1));
    const StateDerivative k3 = f(advanced(0.5, k2));
    const StateDerivative k4 = f(advanced(1.0, k3));
    const double w = dt / 6.0;
    return StateVector{s.t + dt,
                       s.n + w * (k1.dn + 2.0 * k2.dn + 2.0 * k3.dn + k4.dn),
                       s.n_p + w * (k1.dn_p + 2.0 * k2.dn_p + 2.0 * k3.dn_p + k4.dn_p),
                       s.a + w * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da),
                       s.m + w * (k1.dm + 2.0 * k2.dm + 2.0 * k3.dm + k4.dm)};
}

}  // namespace detail

/// One RK4 step of the model dynamics. Compartments that step below zero
/// are clamped to exactly zero; if clamp_count is non-null it is
/// incremented once per clamped compartment. Throws IntegrationFault on
/// non-finite results.
StateVector step_rk4(const StateVector& s, double dt, const ModelParams& p,
                     std::uint64_t* clamp_count = nullptr);

/// Fixed-step RK4 integration from the scenario's initial state to t_end,
/// recording every record_every steps plus the final state. Deterministic:
/// identical inputs give bit-identical trajectories.
Trajectory integrate(const Scenario& sc, const ModelParams& p);

}  // namespace tcellsim
