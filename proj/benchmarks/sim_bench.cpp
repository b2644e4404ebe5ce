#include <benchmark/benchmark.h>

#include <random>

#include "tcellsim/abm.hpp"
#include "tcellsim/ode.hpp"

using namespace tcellsim;

static void BM_ThymicOutput(benchmark::State& state) {
    const ModelParams p = default_params();
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(thymic_output(t, p));
        t += 0.01;
        if (t > 100.0) t = 0.0;
    }
}
BENCHMARK(BM_ThymicOutput);

static void BM_Derivatives(benchmark::State& state) {
    const ModelParams p = default_params();
    const StateVector s{30.0, 120.0, 0.4, 0.001, 0.001};
    for (auto _ : state) {
        benchmark::DoNotOptimize(derivatives(s, p));
    }
}
BENCHMARK(BM_Derivatives);

static void BM_StepRk4(benchmark::State& state) {
    const ModelParams p = default_params();
    const StateVector s{30.0, 120.0, 0.4, 0.001, 0.001};
    for (auto _ : state) {
        benchmark::DoNotOptimize(step_rk4(s, 0.01, p));
    }
}
BENCHMARK(BM_StepRk4);

static void BM_IntegrateLifespan(benchmark::State& state) {
    const ModelParams p = default_params();
    const Scenario sc = default_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(sc, p));
    }
}
BENCHMARK(BM_IntegrateLifespan);

static void BM_StepPopulation(benchmark::State& state) {
    const ModelParams p = default_params();
    std::mt19937_64 rng(1);
    AgentPopulation pop{2000, 2, 0, 0, 0.0};
    for (auto _ : state) {
        pop = step_population(pop, p, 0.001, rng);
        if (pop.t > 100.0) {
            pop = AgentPopulation{2000, 2, 0, 0, 0.0};
        }
        benchmark::DoNotOptimize(pop);
    }
}
BENCHMARK(BM_StepPopulation);

static void BM_ReplicateYear(benchmark::State& state) {
    const ModelParams p = default_params();
    Scenario sc = default_scenario();
    sc.t_end = 1.0;
    AbmConfig cfg;
    cfg.dt = 0.001;
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_replicate(sc, p, cfg, index++));
    }
}
BENCHMARK(BM_ReplicateYear);

BENCHMARK_MAIN();
