#include "tcellsim/abm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "tcellsim/ode.hpp"
#include "tcellsim/rates.hpp"

namespace tcellsim {

void AbmConfig::validate() const {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("AbmConfig: dt must be > 0");
    }
    if (replicates < 1) {
        throw std::invalid_argument("AbmConfig: replicates must be >= 1");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("AbmConfig: scale must be > 0");
    }
}

double hazard_to_prob(double rate, double dt) {
    return -std::expm1(-rate * dt);
}

namespace detail {

std::mt19937_64 replicate_rng(std::uint64_t seed, std::uint64_t replicate_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate_index),
                      static_cast<std::uint32_t>(replicate_index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace detail

namespace {

std::int64_t draw_poisson(std::mt19937_64& rng, double mean) {
    if (!(mean > 0.0)) {
        return 0;
    }
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(rng);
}

std::int64_t draw_binomial(std::mt19937_64& rng, std::int64_t n, double prob) {
    if (n <= 0 || !(prob > 0.0)) {
        return 0;
    }
    if (prob >= 1.0) {
        return n;
    }
    std::binomial_distribution<std::int64_t> dist(n, prob);
    return dist(rng);
}

// Exact competing-risks split for one compartment: draw the number of
// agents with any event from the total hazard, then split among the
// individual events with conditional binomials.
template <std::size_t K>
std::array<std::int64_t, K> draw_exits(std::mt19937_64& rng, std::int64_t count,
                                       const std::array<double, K>& rates,
                                       double dt) {
    std::array<std::int64_t, K> out{};
    double total = 0.0;
    for (double r : rates) {
        total += r;
    }
    if (count <= 0 || !(total > 0.0)) {
        return out;
    }
    std::int64_t remaining = draw_binomial(rng, count, hazard_to_prob(total, dt));
    double remaining_rate = total;
    for (std::size_t i = 0; i + 1 < K; ++i) {
        const double share = std::min(1.0, rates[i] / remaining_rate);
        out[i] = draw_binomial(rng, remaining, share);
        remaining -= out[i];
        remaining_rate -= rates[i];
    }
    out[K - 1] = remaining;
    return out;
}

std::int64_t round_half_even(double x) {
    return static_cast<std::int64_t>(std::nearbyint(x));
}

// Recorded series of one replicate, in recording-grid order.
struct ReplicateSeries {
    std::vector<double> n, n_p, a, m;
};

}  // namespace

AgentPopulation step_population(const AgentPopulation& pop, const ModelParams& p,
                                double dt, std::mt19937_64& rng, double scale) {
    // Frozen start-of-step densities drive every rate in this step.
    const double n_dens = static_cast<double>(pop.naive_thymic) / scale;
    const double np_dens = static_cast<double>(pop.naive_proliferated) / scale;
    const double g = trec_death_factor(np_dens, p);
    const double h = proliferation_dilution(n_dens, np_dens, p);

    const double influx_mean = thymic_influx(pop.t, np_dens, p) * dt * scale;
    if (!std::isfinite(influx_mean)) {
        throw IntegrationFault("non-finite thymic influx mean at t = " +
                               std::to_string(pop.t));
    }
    const std::int64_t arrivals = draw_poisson(rng, influx_mean);

    // naive_thymic: death | convert to proliferated | activate
    const auto n_exits = draw_exits<3>(
        rng, pop.naive_thymic, {p.mu_n * g, p.lambda_n, p.lambda_na}, dt);

    // naive_proliferated: death | activate; plus proliferation births
    const auto np_exits =
        draw_exits<2>(rng, pop.naive_proliferated, {p.mu_n, p.lambda_npa}, dt);
    const std::int64_t births = draw_poisson(
        rng, p.c * h * static_cast<double>(pop.naive_proliferated) * dt);

    // active: death | revert to memory
    const auto a_exits = draw_exits<2>(rng, pop.active, {p.mu_a, p.lambda_a}, dt);

    // memory: death | revert to proliferated naive
    const auto m_exits = draw_exits<2>(rng, pop.memory, {p.mu_m, p.lambda_mn}, dt);

    AgentPopulation next;
    next.naive_thymic =
        pop.naive_thymic - n_exits[0] - n_exits[1] - n_exits[2] + arrivals;
    next.naive_proliferated = pop.naive_proliferated - np_exits[0] - np_exits[1] +
                              n_exits[1] + births + m_exits[1];
    next.active = pop.active - a_exits[0] - a_exits[1] + n_exits[2] + np_exits[1];
    next.memory = pop.memory - m_exits[0] - m_exits[1] + a_exits[1];
    next.t = pop.t + dt;
    return next;
}

namespace {

// Steps between recorded samples; the stochastic step must tile the
// scenario's recording interval so both engines share a grid.
std::int64_t abm_record_stride(const Scenario& sc, double dt) {
    const double ratio = sc.record_interval() / dt;
    const std::int64_t stride = static_cast<std::int64_t>(std::llround(ratio));
    if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-6) {
        throw std::invalid_argument(
            "AbmConfig: dt does not tile the scenario recording interval (" +
            std::to_string(dt) + " vs " + std::to_string(sc.record_interval()) +
            ")");
    }
    return stride;
}

}  // namespace

Trajectory run_replicate(const Scenario& sc, const ModelParams& p,
                         const AbmConfig& cfg, std::uint64_t replicate_index) {
    sc.validate();
    p.validate();
    cfg.validate();

    const std::int64_t steps =
        detail::checked_step_count(sc.t_start, sc.t_end, cfg.dt);
    const std::int64_t stride = abm_record_stride(sc, cfg.dt);

    std::mt19937_64 rng = detail::replicate_rng(cfg.seed, replicate_index);

    AgentPopulation pop;
    pop.naive_thymic = round_half_even(sc.initial_state.n * cfg.scale);
    pop.naive_proliferated = round_half_even(sc.initial_state.n_p * cfg.scale);
    pop.active = round_half_even(sc.initial_state.a * cfg.scale);
    pop.memory = round_half_even(sc.initial_state.m * cfg.scale);
    pop.t = sc.t_start;

    Trajectory traj;
    traj.engine = Engine::abm;
    traj.scenario = sc;
    traj.samples.reserve(static_cast<std::size_t>(steps / stride) + 2);

    auto record = [&](const AgentPopulation& q, double t) {
        traj.samples.push_back(
            StateVector{t, static_cast<double>(q.naive_thymic) / cfg.scale,
                        static_cast<double>(q.naive_proliferated) / cfg.scale,
                        static_cast<double>(q.active) / cfg.scale,
                        static_cast<double>(q.memory) / cfg.scale});
    };

    record(pop, sc.t_start);
    for (std::int64_t i = 0; i < steps; ++i) {
        const double t0 = sc.t_start + static_cast<double>(i) * cfg.dt;
        const double t1 = (i + 1 == steps)
                              ? sc.t_end
                              : sc.t_start + static_cast<double>(i + 1) * cfg.dt;
        pop.t = t0;
        pop = step_population(pop, p, t1 - t0, rng, cfg.scale);
        if ((i + 1) % stride == 0 || i + 1 == steps) {
            record(pop, t1);
        }
    }
    return traj;
}

EnsembleStats run_ensemble(const Scenario& sc, const ModelParams& p,
                           const AbmConfig& cfg) {
    sc.validate();
    p.validate();
    cfg.validate();

    const std::size_t n_reps = static_cast<std::size_t>(cfg.replicates);
    std::vector<ReplicateSeries> results(n_reps);

    std::atomic<std::size_t> next_index{0};
    std::mutex fault_mutex;
    std::exception_ptr fault;
    std::uint64_t fault_index = 0;

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next_index.fetch_add(1);
            if (idx >= n_reps) {
                return;
            }
            try {
                Trajectory traj =
                    run_replicate(sc, p, cfg, static_cast<std::uint64_t>(idx));
                ReplicateSeries& series = results[idx];
                series.n.reserve(traj.samples.size());
                for (const StateVector& s : traj.samples) {
                    series.n.push_back(s.n);
                    series.n_p.push_back(s.n_p);
                    series.a.push_back(s.a);
                    series.m.push_back(s.m);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(fault_mutex);
                if (!fault) {
                    fault = std::current_exception();
                    fault_index = idx;
                }
                return;
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_workers =
        std::min<std::size_t>(hw, n_reps);
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) {
        threads.emplace_back(worker);
    }
    for (auto& th : threads) {
        th.join();
    }

    if (fault) {
        const std::string tag = "replicate " + std::to_string(fault_index) + ": ";
        try {
            std::rethrow_exception(fault);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(tag + e.what());
        } catch (const std::exception& e) {
            throw IntegrationFault(tag + e.what());
        }
    }

    // Recording grid shared by every replicate.
    EnsembleStats stats;
    stats.replicates = cfg.replicates;
    const std::int64_t steps =
        detail::checked_step_count(sc.t_start, sc.t_end, cfg.dt);
    const std::int64_t stride = abm_record_stride(sc, cfg.dt);
    stats.t.push_back(sc.t_start);
    for (std::int64_t i = 0; i < steps; ++i) {
        if ((i + 1) % stride == 0 || i + 1 == steps) {
            stats.t.push_back(i + 1 == steps
                                  ? sc.t_end
                                  : sc.t_start + static_cast<double>(i + 1) * cfg.dt);
        }
    }
    const std::size_t n_points = stats.t.size();

    // Index-ordered two-pass reduction: results do not depend on which
    // worker ran which replicate.
    auto reduce = [&](auto&& get, SeriesStats& out) {
        out.mean.resize(n_points);
        out.variance.resize(n_points);
        out.min.resize(n_points);
        out.max.resize(n_points);
        for (std::size_t k = 0; k < n_points; ++k) {
            double sum = 0.0;
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < n_reps; ++r) {
                const double v = get(results[r], k);
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double mean = sum / static_cast<double>(n_reps);
            double ssd = 0.0;
            for (std::size_t r = 0; r < n_reps; ++r) {
                const double d = get(results[r], k) - mean;
                ssd += d * d;
            }
            out.mean[k] = mean;
            out.variance[k] = n_reps > 1 ? ssd / static_cast<double>(n_reps - 1) : 0.0;
            out.min[k] = lo;
            out.max[k] = hi;
        }
    };

    reduce([](const ReplicateSeries& s, std::size_t k) { return s.n[k]; }, stats.n);
    reduce([](const ReplicateSeries& s, std::size_t k) { return s.n_p[k]; }, stats.n_p);
    reduce([](const ReplicateSeries& s, std::size_t k) { return s.a[k]; }, stats.a);
    reduce([](const ReplicateSeries& s, std::size_t k) { return s.m[k]; }, stats.m);
    reduce([](const ReplicateSeries& s, std::size_t k) { return s.n[k] + s.n_p[k]; },
           stats.total_naive);
    return stats;
}

}  // namespace tcellsim
