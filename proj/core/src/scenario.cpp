#include "tcellsim/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcellsim {

Scenario default_scenario() {
    return Scenario{};
}

namespace detail {

std::int64_t checked_step_count(double t_start, double t_end, double dt) {
    const double exact = (t_end - t_start) / dt;
    // Guard the cast: the comparison must happen in floating point.
    if (!(exact < static_cast<double>(kMaxSteps))) {
        throw std::invalid_argument(
            "scenario needs about " + std::to_string(exact) +
            " steps, above the safety cap of " + std::to_string(kMaxSteps));
    }
    std::int64_t n = static_cast<std::int64_t>(std::ceil(exact - 1e-9));
    if (n < 1) {
        n = 1;
    }
    return n;
}

}  // namespace detail

void Scenario::validate() const {
    if (!(t_end > t_start)) {
        throw std::invalid_argument("Scenario: t_end must be > t_start");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("Scenario: dt must be > 0");
    }
    if (dt > t_end - t_start) {
        throw std::invalid_argument("Scenario: dt must not exceed the horizon");
    }
    if (record_every < 1) {
        throw std::invalid_argument("Scenario: record_every must be >= 1");
    }
    const struct {
        const char* name;
        double value;
    } comps[] = {{"N", initial_state.n},
                 {"Np", initial_state.n_p},
                 {"A", initial_state.a},
                 {"M", initial_state.m}};
    for (const auto& c : comps) {
        if (!(c.value >= 0.0) || !std::isfinite(c.value)) {
            throw std::invalid_argument(
                std::string("Scenario: initial ") + c.name +
                " must be finite and >= 0");
        }
    }
}

}  // namespace tcellsim
