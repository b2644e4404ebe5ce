#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "csv_io.hpp"
#include "tcellsim/analysis.hpp"
#include "tcellsim/ode.hpp"

namespace tcellsim::cli {

namespace {

std::string default_path(const RunConfig& cfg, const std::string& fallback) {
    return cfg.out_path.empty() ? fallback : cfg.out_path;
}

std::string compact_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::string optional_field(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

double n_at(const Trajectory& traj, double target) {
    const StateVector* best = &traj.samples.front();
    for (const StateVector& s : traj.samples) {
        if (std::abs(s.t - target) < std::abs(best->t - target)) {
            best = &s;
        }
    }
    return best->n;
}

}  // namespace

int cmd_run_ode(const RunConfig& cfg) {
    const Trajectory traj = integrate(cfg.scenario, cfg.params);
    const std::string path = default_path(cfg, "trajectory_ode.csv");
    write_trajectory_csv(traj, path);
    std::cout << "wrote " << path << " (" << traj.samples.size()
              << " samples, clamp_count=" << traj.clamp_count << ")\n";
    return 0;
}

int cmd_run_abm(const RunConfig& cfg) {
    const EnsembleStats stats = run_ensemble(cfg.scenario, cfg.params, cfg.abm);
    const std::string path = default_path(cfg, "ensemble_abm.csv");
    write_ensemble_csv(stats, path);
    std::cout << "wrote " << path << " (" << stats.t.size() << " samples, "
              << stats.replicates << " replicates, seed=" << cfg.abm.seed
              << ")\n";
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const Trajectory ode = integrate(cfg.scenario, cfg.params);
    const EnsembleStats abm = run_ensemble(cfg.scenario, cfg.params, cfg.abm);
    const ComparisonReport report = compare(ode, abm, cfg.compare_tol);

    std::cout << comparison_table(report);
    const std::string path = default_path(cfg, "comparison.json");
    write_comparison_json(report, cfg.compare_tol, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& param_key,
              const std::vector<double>& values) {
    if (values.empty()) {
        throw ConfigError("sweep: at least one value is required");
    }
    const std::string stem = default_path(cfg, "sweep");
    const auto dot = param_key.rfind('.');
    const std::string short_key =
        dot == std::string::npos ? param_key : param_key.substr(dot + 1);

    std::string summary = "value,crossover_age,thymic_peak_age,"
                          "late_decay_halflife,total_naive_drift,n_late\n";
    for (const double value : values) {
        RunConfig run = cfg;
        apply_override(run, param_key, format_double(value),
                       "sweep value " + compact_number(value));
        validate(run);

        const Trajectory traj = integrate(run.scenario, run.params);
        const std::string path =
            stem + "_" + short_key + "_" + compact_number(value) + ".csv";
        write_trajectory_csv(traj, path);

        const FeatureReport features = extract_features(traj, run.features);
        summary += format_double(value);
        summary += ',';
        summary += optional_field(features.crossover_age);
        summary += ',';
        summary += format_double(features.thymic_peak_age);
        summary += ',';
        summary += optional_field(features.late_decay_halflife);
        summary += ',';
        summary += optional_field(features.total_naive_drift);
        summary += ',';
        summary += format_double(n_at(traj, run.features.fit_end));
        summary += '\n';
        std::cout << "wrote " << path << "\n";
    }

    const std::string summary_path = stem + "_summary.csv";
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + summary_path);
    }
    out << summary;
    std::cout << "wrote " << summary_path << "\n";
    return 0;
}

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::int64_t replicates = 0;
    bool replicates_set = false;
    std::vector<std::string> overrides;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path,
                    "configuration file (key = value lines)");
    sub->add_option("--out", flags.out_path, "output path (sweep: path stem)");
    sub->add_option("--seed", flags.seed, "ABM master seed")
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    sub->add_option("--replicates", flags.replicates, "ABM replicate count")
        ->each([&flags](const std::string&) { flags.replicates_set = true; });
    sub->add_option("--set", flags.overrides,
                    "override one key (key=value, repeatable, highest precedence)");
}

RunConfig resolve_config(const CommonFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in) {
            throw ConfigError("cannot open config file: " + flags.config_path);
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = parse_config(buf.str());
    }
    if (flags.seed_set) {
        cfg.abm.seed = flags.seed;
    }
    if (flags.replicates_set) {
        if (flags.replicates < 1) {
            throw ConfigError("--replicates must be >= 1");
        }
        cfg.abm.replicates = flags.replicates;
    }
    if (!flags.out_path.empty()) {
        cfg.out_path = flags.out_path;
    }
    for (const std::string& item : flags.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + item + "'");
        }
        apply_override(cfg, item.substr(0, eq), item.substr(eq + 1),
                       "--set " + item);
    }
    validate(cfg);
    return cfg;
}

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::istringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0') {
            throw ConfigError("--values: cannot parse '" + item + "' as a number");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw ConfigError("--values: empty list");
    }
    return values;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"naive T cell repertoire simulator (ODE and agent-based engines)"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string sweep_param;
    std::string sweep_values;

    CLI::App* run_ode = app.add_subcommand("run-ode", "deterministic ODE run -> trajectory CSV");
    add_common_flags(run_ode, flags);
    CLI::App* run_abm = app.add_subcommand("run-abm", "stochastic ensemble run -> ensemble CSV");
    add_common_flags(run_abm, flags);
    CLI::App* compare_cmd = app.add_subcommand("compare", "run both engines and report agreement");
    add_common_flags(compare_cmd, flags);
    CLI::App* sweep = app.add_subcommand("sweep", "ODE runs over a list of parameter values");
    add_common_flags(sweep, flags);
    sweep->add_option("--param", sweep_param, "key to sweep (e.g. params.b)")->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    // CLI11 wants argv-style reversed arguments.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = resolve_config(flags);
        if (run_ode->parsed()) {
            return cmd_run_ode(cfg);
        }
        if (run_abm->parsed()) {
            return cmd_run_abm(cfg);
        }
        if (compare_cmd->parsed()) {
            return cmd_compare(cfg);
        }
        return cmd_sweep(cfg, sweep_param, parse_value_list(sweep_values));
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcellsim::cli
