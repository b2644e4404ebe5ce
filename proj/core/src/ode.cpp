#include "tcellsim/ode.hpp"

#include <cmath>
#include <string>

namespace tcellsim {

namespace {

void check_finite(const StateVector& s) {
    const struct {
        const char* name;
        double value;
    } comps[] = {{"N", s.n}, {"Np", s.n_p}, {"A", s.a}, {"M", s.m}};
    for (const auto& c : comps) {
        if (!std::isfinite(c.value)) {
            throw IntegrationFault("non-finite value in compartment " +
                                   std::string(c.name) + " at t = " +
                                   std::to_string(s.t));
        }
    }
}

void clamp_negative(double& value, std::uint64_t* clamp_count) {
    if (value < 0.0) {
        value = 0.0;
        if (clamp_count != nullptr) {
            ++*clamp_count;
        }
    }
}

}  // namespace

StateVector step_rk4(const StateVector& s, double dt, const ModelParams& p,
                     std::uint64_t* clamp_count) {
    StateVector next = detail::rk4_step(
        s, dt, [&p](const StateVector& y) { return derivatives(y, p); });
    clamp_negative(next.n, clamp_count);
    clamp_negative(next.n_p, clamp_count);
    clamp_negative(next.a, clamp_count);
    clamp_negative(next.m, clamp_count);
    check_finite(next);
    return next;
}

Trajectory integrate(const Scenario& sc, const ModelParams& p) {
    sc.validate();
    p.validate();

    const std::int64_t steps =
        detail::checked_step_count(sc.t_start, sc.t_end, sc.dt);

    Trajectory traj;
    traj.engine = Engine::ode;
    traj.scenario = sc;
    traj.samples.reserve(static_cast<std::size_t>(steps / sc.record_every) + 2);

    StateVector state = sc.initial_state;
    state.t = sc.t_start;
    traj.samples.push_back(state);

    for (std::int64_t i = 0; i < steps; ++i) {
        // Grid times come from the step index, not accumulation, so both
        // engines land on bit-comparable recording grids.
        const double t0 = sc.t_start + static_cast<double>(i) * sc.dt;
        const double t1 = (i + 1 == steps)
                              ? sc.t_end
                              : sc.t_start + static_cast<double>(i + 1) * sc.dt;
        state.t = t0;
        state = step_rk4(state, t1 - t0, p, &traj.clamp_count);
        state.t = t1;
        if ((i + 1) % sc.record_every == 0 || i + 1 == steps) {
            traj.samples.push_back(state);
        }
    }
    return traj;
}

}  // namespace tcellsim
