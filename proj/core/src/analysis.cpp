#include "tcellsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tcellsim {

namespace {

constexpr double kRelFloor = 1.0;  // cells/mm^3, denominator floor

CompartmentError compartment_metrics(const std::vector<double>& t,
                                     const std::vector<double>& ode,
                                     const std::vector<double>& abm,
                                     const ToleranceProfile& tol) {
    CompartmentError e;
    double sq_sum = 0.0;
    for (std::size_t k = 0; k < ode.size(); ++k) {
        const double err = std::abs(abm[k] - ode[k]);
        sq_sum += err * err;
        if (err > e.max_abs_err) {
            e.max_abs_err = err;
            e.t_at_max_abs = t[k];
        }
        e.max_rel_err = std::max(e.max_rel_err,
                                 err / std::max(std::abs(ode[k]), kRelFloor));
        if (err > std::max(tol.rel_tol * std::abs(ode[k]), tol.abs_tol)) {
            e.pass = false;
        }
    }
    e.rmse = std::sqrt(sq_sum / static_cast<double>(ode.size()));
    return e;
}

}  // namespace

ComparisonReport compare(const Trajectory& ode, const EnsembleStats& abm,
                         const ToleranceProfile& tol) {
    if (ode.samples.size() != abm.t.size()) {
        throw std::invalid_argument(
            "compare: recording grids differ in length (" +
            std::to_string(ode.samples.size()) + " vs " +
            std::to_string(abm.t.size()) + ")");
    }
    if (ode.samples.empty()) {
        throw std::invalid_argument("compare: empty trajectories");
    }
    for (const SeriesStats* series : {&abm.n, &abm.n_p, &abm.a, &abm.m}) {
        if (series->mean.size() != abm.t.size()) {
            throw std::invalid_argument(
                "compare: ensemble series length does not match its time grid");
        }
    }
    std::vector<double> t(ode.samples.size());
    std::vector<double> n(ode.samples.size()), n_p(ode.samples.size()),
        a(ode.samples.size()), m(ode.samples.size());
    for (std::size_t k = 0; k < ode.samples.size(); ++k) {
        const StateVector& s = ode.samples[k];
        if (std::abs(s.t - abm.t[k]) > 1e-9) {
            throw std::invalid_argument(
                "compare: recording grids misaligned at index " +
                std::to_string(k) + " (" + std::to_string(s.t) + " vs " +
                std::to_string(abm.t[k]) + ")");
        }
        t[k] = s.t;
        n[k] = s.n;
        n_p[k] = s.n_p;
        a[k] = s.a;
        m[k] = s.m;
    }

    ComparisonReport report;
    report.n = compartment_metrics(t, n, abm.n.mean, tol);
    report.n_p = compartment_metrics(t, n_p, abm.n_p.mean, tol);
    report.a = compartment_metrics(t, a, abm.a.mean, tol);
    report.m = compartment_metrics(t, m, abm.m.mean, tol);
    report.pass = report.n.pass && report.n_p.pass && report.a.pass && report.m.pass;
    return report;
}

FeatureReport extract_features(const Trajectory& traj, const FeatureConfig& cfg) {
    if (traj.samples.size() < 2) {
        throw std::invalid_argument("extract_features: trajectory too short");
    }
    const double span = traj.samples.back().t - traj.samples.front().t;
    if (span < 30.0) {
        throw std::invalid_argument(
            "extract_features: trajectory must span at least 30 years (got " +
            std::to_string(span) + ")");
    }
    if (!(cfg.fit_end > cfg.fit_start)) {
        throw std::invalid_argument("extract_features: fit window is empty");
    }

    FeatureReport report;

    double n_max = -std::numeric_limits<double>::infinity();
    for (const StateVector& s : traj.samples) {
        if (s.n > n_max) {
            n_max = s.n;
            report.thymic_peak_age = s.t;
        }
        if (!report.crossover_age && s.n_p > s.n) {
            report.crossover_age = s.t;
        }
    }

    // Least-squares line through ln N(t) over the window.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (const StateVector& s : traj.samples) {
        if (s.t < cfg.fit_start - 1e-9 || s.t > cfg.fit_end + 1e-9 || s.n <= 0.0) {
            continue;
        }
        const double y = std::log(s.n);
        sx += s.t;
        sy += y;
        sxx += s.t * s.t;
        sxy += s.t * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = static_cast<double>(count) * sxx - sx * sx;
        if (denom > 0.0) {
            const double slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
            if (slope < 0.0) {
                report.late_decay_halflife = std::log(2.0) / -slope;
            }
        }
    }

    // Total-naive drift across the window, using the recorded samples
    // closest to its endpoints; absent when the window is not covered.
    if (traj.samples.front().t <= cfg.fit_start + 1e-9 &&
        traj.samples.back().t >= cfg.fit_end - 1e-9) {
        auto nearest = [&](double target) {
            const StateVector* best = &traj.samples.front();
            for (const StateVector& s : traj.samples) {
                if (std::abs(s.t - target) < std::abs(best->t - target)) {
                    best = &s;
                }
            }
            return best;
        };
        const StateVector* at_start = nearest(cfg.fit_start);
        const StateVector* at_end = nearest(cfg.fit_end);
        const double start_total = at_start->total_naive();
        if (start_total > 0.0) {
            report.total_naive_drift = at_end->total_naive() / start_total - 1.0;
        }
    }
    return report;
}

MemoryEstimate memory_estimate(const Trajectory& traj, double active_fraction) {
    if (!(active_fraction > 0.0) || !(active_fraction < 1.0)) {
        throw std::invalid_argument(
            "memory_estimate: active_fraction must be in (0, 1)");
    }
    MemoryEstimate est;
    est.t.reserve(traj.samples.size());
    est.model_memory.reserve(traj.samples.size());
    for (const StateVector& s : traj.samples) {
        est.t.push_back(s.t);
        est.model_memory.push_back(s.m);
        if (s.a > 0.0) {
            est.estimate_present = true;
        }
    }
    if (!est.estimate_present) {
        return est;
    }
    const double inv_fraction = 1.0 / active_fraction;
    est.estimated_total.reserve(traj.samples.size());
    est.memory_share.reserve(traj.samples.size());
    for (const StateVector& s : traj.samples) {
        const double total = s.a * inv_fraction;
        est.estimated_total.push_back(total);
        est.memory_share.push_back(
            total > 0.0 ? s.m / total : std::numeric_limits<double>::quiet_NaN());
    }
    return est;
}

}  // namespace tcellsim
