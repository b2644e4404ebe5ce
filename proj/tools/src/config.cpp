#include "config.hpp"

#include <cerrno>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

namespace tcellsim::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError(context + ": cannot parse '" + value + "' as a number");
    }
    return v;
}

std::int64_t parse_int(const std::string& value, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError(context + ": cannot parse '" + value + "' as an integer");
    }
    return v;
}

std::uint64_t parse_uint(const std::string& value, const std::string& context) {
    const std::string t = trim(value);
    if (!t.empty() && t[0] == '-') {
        throw ConfigError(context + ": cannot parse '" + value +
                          "' as an unsigned integer");
    }
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE) {
        throw ConfigError(context + ": cannot parse '" + value +
                          "' as an unsigned integer");
    }
    return v;
}

using Setter = std::function<void(RunConfig&, const std::string& value,
                                  const std::string& context)>;

// Per-key setters validate their own invariant so diagnostics carry the
// offending line.
const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> m;

        auto rate = [&m](const std::string& key, double ModelParams::* field) {
            m["params." + key] = [key, field](RunConfig& cfg, const std::string& v,
                                              const std::string& ctx) {
                const double value = parse_double(v, ctx);
                if (value < 0.0) {
                    throw ConfigError(ctx + ": params." + key + " must be >= 0");
                }
                cfg.params.*field = value;
            };
        };
        auto positive = [&m](const std::string& key, double ModelParams::* field) {
            m["params." + key] = [key, field](RunConfig& cfg, const std::string& v,
                                              const std::string& ctx) {
                const double value = parse_double(v, ctx);
                if (!(value > 0.0)) {
                    throw ConfigError(ctx + ": params." + key + " must be > 0");
                }
                cfg.params.*field = value;
            };
        };

        rate("lambda_thymic", &ModelParams::lambda_thymic);
        rate("lambda_n", &ModelParams::lambda_n);
        rate("mu_n", &ModelParams::mu_n);
        rate("c", &ModelParams::c);
        rate("lambda_mn", &ModelParams::lambda_mn);
        rate("mu_m", &ModelParams::mu_m);
        rate("lambda_na", &ModelParams::lambda_na);
        rate("lambda_npa", &ModelParams::lambda_npa);
        rate("lambda_a", &ModelParams::lambda_a);
        rate("mu_a", &ModelParams::mu_a);
        rate("s_bar", &ModelParams::s_bar);
        rate("b", &ModelParams::b);
        rate("s0_scale", &ModelParams::s0_scale);
        positive("n_p_bar", &ModelParams::n_p_bar);
        positive("n_b", &ModelParams::n_b);

        m["scenario.t_start"] = [](RunConfig& cfg, const std::string& v,
                                   const std::string& ctx) {
            cfg.scenario.t_start = parse_double(v, ctx);
        };
        m["scenario.t_end"] = [](RunConfig& cfg, const std::string& v,
                                 const std::string& ctx) {
            cfg.scenario.t_end = parse_double(v, ctx);
        };
        m["scenario.dt"] = [](RunConfig& cfg, const std::string& v,
                              const std::string& ctx) {
            const double value = parse_double(v, ctx);
            if (!(value > 0.0)) {
                throw ConfigError(ctx + ": scenario.dt must be > 0");
            }
            cfg.scenario.dt = value;
        };
        m["scenario.record_every"] = [](RunConfig& cfg, const std::string& v,
                                        const std::string& ctx) {
            const std::int64_t value = parse_int(v, ctx);
            if (value < 1) {
                throw ConfigError(ctx + ": scenario.record_every must be >= 1");
            }
            cfg.scenario.record_every = value;
        };

        auto initial = [&m](const std::string& key, double StateVector::* field) {
            m["scenario." + key] = [key, field](RunConfig& cfg, const std::string& v,
                                                const std::string& ctx) {
                const double value = parse_double(v, ctx);
                if (value < 0.0) {
                    throw ConfigError(ctx + ": scenario." + key + " must be >= 0");
                }
                cfg.scenario.initial_state.*field = value;
            };
        };
        initial("n0", &StateVector::n);
        initial("np0", &StateVector::n_p);
        initial("a0", &StateVector::a);
        initial("m0", &StateVector::m);

        m["abm.dt"] = [](RunConfig& cfg, const std::string& v,
                         const std::string& ctx) {
            const double value = parse_double(v, ctx);
            if (!(value > 0.0)) {
                throw ConfigError(ctx + ": abm.dt must be > 0");
            }
            cfg.abm.dt = value;
        };
        m["abm.seed"] = [](RunConfig& cfg, const std::string& v,
                           const std::string& ctx) {
            cfg.abm.seed = parse_uint(v, ctx);
        };
        m["abm.replicates"] = [](RunConfig& cfg, const std::string& v,
                                 const std::string& ctx) {
            const std::int64_t value = parse_int(v, ctx);
            if (value < 1) {
                throw ConfigError(ctx + ": abm.replicates must be >= 1");
            }
            cfg.abm.replicates = value;
        };
        m["abm.scale"] = [](RunConfig& cfg, const std::string& v,
                            const std::string& ctx) {
            const double value = parse_double(v, ctx);
            if (!(value > 0.0)) {
                throw ConfigError(ctx + ": abm.scale must be > 0");
            }
            cfg.abm.scale = value;
        };

        m["compare.rel_tol"] = [](RunConfig& cfg, const std::string& v,
                                  const std::string& ctx) {
            const double value = parse_double(v, ctx);
            if (value < 0.0) {
                throw ConfigError(ctx + ": compare.rel_tol must be >= 0");
            }
            cfg.compare_tol.rel_tol = value;
        };
        m["compare.abs_tol"] = [](RunConfig& cfg, const std::string& v,
                                  const std::string& ctx) {
            const double value = parse_double(v, ctx);
            if (value < 0.0) {
                throw ConfigError(ctx + ": compare.abs_tol must be >= 0");
            }
            cfg.compare_tol.abs_tol = value;
        };

        m["analysis.fit_start"] = [](RunConfig& cfg, const std::string& v,
                                     const std::string& ctx) {
            cfg.features.fit_start = parse_double(v, ctx);
        };
        m["analysis.fit_end"] = [](RunConfig& cfg, const std::string& v,
                                   const std::string& ctx) {
            cfg.features.fit_end = parse_double(v, ctx);
        };

        m["output.path"] = [](RunConfig& cfg, const std::string& v,
                              const std::string&) { cfg.out_path = trim(v); };
        m["output.format"] = [](RunConfig& cfg, const std::string& v,
                                const std::string& ctx) {
            const std::string value = trim(v);
            if (value != "csv") {
                throw ConfigError(ctx + ": output.format must be 'csv'");
            }
            cfg.out_format = value;
        };
        return m;
    }();
    return table;
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value, const std::string& context) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(context + ": unknown key '" + key + "'");
    }
    it->second(cfg, value, context);
}

void validate(const RunConfig& cfg) {
    try {
        cfg.params.validate();
        cfg.scenario.validate();
        cfg.abm.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.features.fit_end > cfg.features.fit_start)) {
        throw ConfigError("analysis.fit_end must be > analysis.fit_start");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string context = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(context + ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(context + ": empty key");
        }
        if (value.empty()) {
            throw ConfigError(context + ": empty value for '" + key + "'");
        }
        apply_override(cfg, key, value, context);
    }
    validate(cfg);
    return cfg;
}

std::vector<std::string> known_keys() {
    std::vector<std::string> keys;
    keys.reserve(setters().size());
    for (const auto& [key, setter] : setters()) {
        keys.push_back(key);
    }
    return keys;
}

}  // namespace tcellsim::cli
