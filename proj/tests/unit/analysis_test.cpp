#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "tcellsim/analysis.hpp"
#include "tcellsim/ode.hpp"

using namespace tcellsim;

namespace {

// Trajectory from closed-form compartment curves on a uniform grid.
Trajectory synthetic(double t_end, double dt,
                     const std::function<double(double)>& n,
                     const std::function<double(double)>& n_p,
                     const std::function<double(double)>& a,
                     const std::function<double(double)>& m) {
    Trajectory traj;
    traj.scenario.t_start = 0.0;
    traj.scenario.t_end = t_end;
    traj.scenario.dt = dt;
    traj.scenario.record_every = 1;
    const int steps = static_cast<int>(std::llround(t_end / dt));
    for (int i = 0; i <= steps; ++i) {
        const double t = i * dt;
        traj.samples.push_back(StateVector{t, n(t), n_p(t), a(t), m(t)});
    }
    return traj;
}

// Degenerate "ensemble" whose mean is the trajectory plus a shift.
EnsembleStats ensemble_from(const Trajectory& traj, double shift_n = 0.0) {
    EnsembleStats stats;
    stats.replicates = 1;
    for (const StateVector& s : traj.samples) {
        stats.t.push_back(s.t);
        stats.n.mean.push_back(s.n + shift_n);
        stats.n_p.mean.push_back(s.n_p);
        stats.a.mean.push_back(s.a);
        stats.m.mean.push_back(s.m);
        stats.total_naive.mean.push_back(s.n + shift_n + s.n_p);
        for (SeriesStats* series :
             {&stats.n, &stats.n_p, &stats.a, &stats.m, &stats.total_naive}) {
            series->variance.push_back(0.0);
            series->min.push_back(series->mean.back());
            series->max.push_back(series->mean.back());
        }
    }
    return stats;
}

constexpr double kLambda = 0.044149501946493332;  // ln2 / 15.7

}  // namespace

TEST_CASE("self-comparison gives all-zero metrics and a pass") {
    const Trajectory traj = synthetic(
        50.0, 0.5, [](double t) { return 2000.0 * std::exp(-0.1 * t); },
        [](double) { return 42.0; }, [](double) { return 1.0; },
        [](double) { return 0.5; });
    const ComparisonReport report = compare(traj, ensemble_from(traj));
    CHECK(report.pass);
    CHECK(report.n.rmse == 0.0);
    CHECK(report.n.max_abs_err == 0.0);
    CHECK(report.n_p.max_rel_err == 0.0);
    CHECK(report.a.rmse == 0.0);
    CHECK(report.m.max_abs_err == 0.0);
}

TEST_CASE("constructed offset shows up in exactly one compartment") {
    const Trajectory traj = synthetic(
        40.0, 1.0, [](double) { return 100.0; }, [](double) { return 50.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    const ComparisonReport report = compare(traj, ensemble_from(traj, 10.0));
    CHECK(report.n.max_abs_err == 10.0);
    CHECK(report.n.rmse == doctest::Approx(10.0));
    CHECK(report.n_p.max_abs_err == 0.0);
    CHECK(report.a.max_abs_err == 0.0);
    CHECK(report.m.max_abs_err == 0.0);
    // 10 cells against N = 100: outside max(5% * 100, 5).
    CHECK_FALSE(report.n.pass);
    CHECK_FALSE(report.pass);
}

TEST_CASE("comparison magnitudes are symmetric in the error sign") {
    const Trajectory traj = synthetic(
        40.0, 1.0, [](double t) { return 500.0 - t; }, [](double) { return 1.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    const ComparisonReport plus = compare(traj, ensemble_from(traj, 3.0));
    const ComparisonReport minus = compare(traj, ensemble_from(traj, -3.0));
    CHECK(plus.n.rmse == minus.n.rmse);
    CHECK(plus.n.max_abs_err == minus.n.max_abs_err);
    CHECK(plus.n.max_rel_err == minus.n.max_rel_err);
}

TEST_CASE("mismatched recording grids are rejected") {
    const Trajectory traj = synthetic(
        40.0, 1.0, [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    EnsembleStats stats = ensemble_from(traj);
    stats.t.pop_back();
    stats.n.mean.pop_back();
    CHECK_THROWS_AS(compare(traj, stats), std::invalid_argument);

    EnsembleStats shifted = ensemble_from(traj);
    shifted.t[3] += 0.5;
    CHECK_THROWS_AS(compare(traj, shifted), std::invalid_argument);
}

TEST_CASE("planted exponential is recovered by the feature fit") {
    const Trajectory traj = synthetic(
        100.0, 0.1, [](double t) { return 1000.0 * std::exp(-kLambda * t); },
        [](double) { return 0.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });
    const FeatureReport features = extract_features(traj);
    REQUIRE(features.late_decay_halflife.has_value());
    CHECK(*features.late_decay_halflife == doctest::Approx(15.7).epsilon(1e-6));
    CHECK(features.thymic_peak_age == 0.0);
    CHECK_FALSE(features.crossover_age.has_value());
    REQUIRE(features.total_naive_drift.has_value());
    CHECK(*features.total_naive_drift ==
          doctest::Approx(std::exp(-kLambda * 50.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("crossover requires a strict inequality") {
    const Trajectory tie = synthetic(
        50.0, 0.5, [](double t) { return 100.0 * std::exp(-0.01 * t); },
        [](double t) { return 100.0 * std::exp(-0.01 * t); },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK_FALSE(extract_features(tie).crossover_age.has_value());

    const Trajectory crossing = synthetic(
        100.0, 0.5, [](double t) { return 1000.0 * std::exp(-0.1 * t); },
        [](double) { return 5.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });
    const FeatureReport features = extract_features(crossing);
    REQUIRE(features.crossover_age.has_value());
    // 1000 e^{-0.1 t} < 5 from t = 52.98 on; first grid point after that.
    CHECK(*features.crossover_age == doctest::Approx(53.0).epsilon(1e-9));
}

TEST_CASE("features are stable under resampling outside the fit window") {
    auto n = [](double t) { return 1000.0 * std::exp(-0.1 * t); };
    const Trajectory full = synthetic(
        100.0, 0.5, n, [](double) { return 5.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });

    Trajectory thinned = full;
    thinned.samples.clear();
    bool keep = true;
    for (const StateVector& s : full.samples) {
        if (s.t >= 40.0 && s.t <= 90.0) {
            thinned.samples.push_back(s);  // fit window preserved exactly
        } else {
            if (keep) {
                thinned.samples.push_back(s);
            }
            keep = !keep;
        }
    }

    const FeatureReport a = extract_features(full);
    const FeatureReport b = extract_features(thinned);
    REQUIRE(a.late_decay_halflife.has_value());
    REQUIRE(b.late_decay_halflife.has_value());
    CHECK(*a.late_decay_halflife == doctest::Approx(*b.late_decay_halflife));
    CHECK(*a.total_naive_drift == doctest::Approx(*b.total_naive_drift));
    CHECK(*a.crossover_age == doctest::Approx(*b.crossover_age));
}

TEST_CASE("half-life is absent without decay or without positive N") {
    const Trajectory growing = synthetic(
        100.0, 1.0, [](double t) { return 10.0 * std::exp(0.01 * t); },
        [](double) { return 0.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });
    CHECK_FALSE(extract_features(growing).late_decay_halflife.has_value());

    const Trajectory extinct = synthetic(
        100.0, 1.0, [](double t) { return t < 35.0 ? 100.0 : 0.0; },
        [](double) { return 2.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; });
    const FeatureReport features = extract_features(extinct);
    CHECK_FALSE(features.late_decay_halflife.has_value());
    REQUIRE(features.total_naive_drift.has_value());  // Np keeps the total positive
}

TEST_CASE("feature extraction enforces its horizon precondition") {
    const Trajectory short_run = synthetic(
        20.0, 0.5, [](double) { return 10.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(extract_features(short_run), std::invalid_argument);
}

TEST_CASE("memory estimate: rescaling, linearity, absence") {
    const Trajectory traj = synthetic(
        50.0, 1.0, [](double) { return 100.0; }, [](double) { return 10.0; },
        [](double t) { return t == 25.0 ? 10.0 : 2.0; },
        [](double t) { return 0.1 * t; });

    const MemoryEstimate est = memory_estimate(traj, 0.1);
    REQUIRE(est.estimate_present);
    REQUIRE(est.estimated_total.size() == traj.samples.size());
    CHECK(est.estimated_total[25] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(est.model_memory[25] == doctest::Approx(2.5));
    CHECK(est.memory_share[25] == doctest::Approx(0.025).epsilon(1e-12));

    // Exactly linear in 1/active_fraction: identical operations, bit-equal.
    for (const double f : {0.1, 0.25, 0.37, 0.5}) {
        const MemoryEstimate scaled = memory_estimate(traj, f);
        const double inv = 1.0 / f;
        for (std::size_t k = 0; k < traj.samples.size(); ++k) {
            CHECK(scaled.estimated_total[k] == traj.samples[k].a * inv);
        }
    }
    const MemoryEstimate tenth = memory_estimate(traj, 0.1);
    const MemoryEstimate half = memory_estimate(traj, 0.5);
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        CHECK(half.estimated_total[k] ==
              doctest::Approx(tenth.estimated_total[k] / 5.0).epsilon(1e-14));
    }

    const Trajectory inactive = synthetic(
        50.0, 1.0, [](double) { return 100.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    const MemoryEstimate absent = memory_estimate(inactive, 0.1);
    CHECK_FALSE(absent.estimate_present);
    CHECK(absent.estimated_total.empty());
    CHECK(absent.memory_share.empty());

    CHECK_THROWS_AS(memory_estimate(traj, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(memory_estimate(traj, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(memory_estimate(traj, -0.2), std::invalid_argument);
    CHECK_THROWS_AS(memory_estimate(traj, 1.5), std::invalid_argument);
}

TEST_CASE("default lifespan run: stable feature characterization") {
    const Trajectory traj = integrate(default_scenario(), default_params());
    const FeatureReport features = extract_features(traj);

    // The initial condition is the all-time thymic-naive maximum.
    CHECK(features.thymic_peak_age == 0.0);

    // Late-life total-naive drift is small next to the early-life collapse.
    REQUIRE(features.total_naive_drift.has_value());
    CHECK(std::abs(*features.total_naive_drift) < 0.2);
    const double early_change =
        1.0 - traj.samples[200].n / traj.samples.front().n;  // ages 0 -> 20
    CHECK(std::abs(*features.total_naive_drift) < early_change);
}

TEST_CASE("comparison accepts real engine output shapes") {
    Scenario sc = default_scenario();
    sc.t_end = 2.0;
    const ModelParams p = default_params();
    const Trajectory ode = integrate(sc, p);
    AbmConfig cfg;
    cfg.dt = 0.001;
    cfg.replicates = 4;
    cfg.seed = 3;
    const EnsembleStats abm = run_ensemble(sc, p, cfg);
    const ComparisonReport report = compare(ode, abm);
    CHECK(report.n.max_abs_err < 100.0);
}
