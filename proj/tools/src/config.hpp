#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tcellsim/abm.hpp"
#include "tcellsim/analysis.hpp"
#include "tcellsim/params.hpp"
#include "tcellsim/scenario.hpp"

namespace tcellsim::cli {

/// Configuration problem: unknown key, unparseable value or violated
/// invariant. Messages carry the source line when one applies.
class ConfigError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Fully resolved run configuration. Defaults are the published parameter
/// set, the lifespan scenario and the stock ABM settings.
struct RunConfig {
    ModelParams params = default_params();
    Scenario scenario = default_scenario();
    AbmConfig abm;
    ToleranceProfile compare_tol;
    FeatureConfig features;
    std::string out_path;           ///< empty: command picks its default
    std::string out_format = "csv";
};

/// Parses a flat key-value document: one `key = value` per line, `#`
/// comments, blank lines ignored. Unspecified keys keep their defaults.
/// Throws ConfigError with the line number on any problem; never returns
/// a partially applied config.
RunConfig parse_config(const std::string& text);

/// Applies a single `key=value` override (the --set flag). `context` is
/// used in diagnostics in place of a line number.
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value, const std::string& context);

/// Cross-field validation run after all overrides are applied.
void validate(const RunConfig& cfg);

/// All recognized keys, for diagnostics and the README.
std::vector<std::string> known_keys();

}  // namespace tcellsim::cli
