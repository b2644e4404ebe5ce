#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tcellsim/params.hpp"
#include "tcellsim/scenario.hpp"

namespace tcellsim {

/// Integer agent counts per state at one time point. Counts never go
/// negative: every step draws per-compartment exits from the agents the
/// compartment actually holds.
struct AgentPopulation {
    std::int64_t naive_thymic = 0;
    std::int64_t naive_proliferated = 0;
    std::int64_t active = 0;
    std::int64_t memory = 0;
    double t = 0.0;  ///< years

    std::int64_t total() const {
        return naive_thymic + naive_proliferated + active + memory;
    }
};

/// Stochastic-engine settings. dt defaults to 0.001 (a tenth of the ODE
/// step) because the discrete-time hazard scheme is first-order accurate.
struct AbmConfig {
    double dt = 0.001;             ///< stochastic step, years
    std::uint64_t seed = 1;        ///< master seed for the ensemble
    std::int64_t replicates = 100; ///< independent runs, >= 1
    double scale = 1.0;            ///< agents per (cell/mm^3), > 0

    void validate() const;
};

/// Per-sample-point statistics of one recorded series across replicates.
struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> variance;  ///< sample variance (n - 1)
    std::vector<double> min;
    std::vector<double> max;
};

/// Cross-replicate summary on the shared recording grid. total_naive is
/// the per-replicate N + Np series, aggregated like the compartments.
struct EnsembleStats {
    std::vector<double> t;
    SeriesStats n, n_p, a, m, total_naive;
    std::int64_t replicates = 0;
};

/// Probability that an exponential event with the given hazard fires
/// within dt: 1 - exp(-rate * dt).
double hazard_to_prob(double rate, double dt);

/// One synchronous stochastic step. All hazards and the influx mean use
/// the start-of-step counts; competing hazards on one compartment are
/// resolved exactly (any-event probability 1 - e^{-sum r dt}, event i
/// picked with probability r_i / sum r). Proliferation and thymic influx
/// are Poisson draws. `scale` converts counts to densities for the rate
/// functions; pass the AbmConfig value when scaling is in use.
AgentPopulation step_population(const AgentPopulation& pop, const ModelParams& p,
                                double dt, std::mt19937_64& rng, double scale = 1.0);

/// One stochastic realization of the scenario. The replicate's random
/// stream is derived from (cfg.seed, replicate_index), so runs are
/// reproducible and replicates independent. Samples store densities
/// (counts / cfg.scale) on the scenario's recording grid.
Trajectory run_replicate(const Scenario& sc, const ModelParams& p,
                         const AbmConfig& cfg, std::uint64_t replicate_index);

/// Runs cfg.replicates independent replicates (concurrently) and
/// aggregates per-time-point statistics. The result is independent of
/// scheduling: replicate streams depend only on (seed, index) and the
/// reduction is done in index order after all replicates finish.
EnsembleStats run_ensemble(const Scenario& sc, const ModelParams& p,
                           const AbmConfig& cfg);

namespace detail {

/// Engine for one replicate, seeded from the master seed and the
/// replicate index through std::seed_seq.
std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t replicate_index);

}  // namespace detail

}  // namespace tcellsim
