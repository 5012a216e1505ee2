#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qorth/coefficients.hpp"

namespace qorth::cli {

/// Everything a run depends on. Serialized as flat `key=value` lines.
struct RunConfig {
    // Family: the geometric example unless a table path is given.
    double a = 0.3;
    double q = 0.25;
    Beta0Mode beta0_mode = Beta0Mode::GammaOnly;
    std::string table;
    TailRule tail_rule = TailRule::None;

    std::size_t k = 60;       // support points to resolve
    std::size_t n_max = 40;   // largest expansion / Lebesgue order
    std::size_t lin_max = 25; // linearization indices n, m <= lin_max
    double rel_tol = 1e-10;
    double c_grid_resolution = 1e-4;
    std::vector<std::string> functions{"sqrt", "abs_xi5", "rational", "pow32"};
    std::string suite = "default";
    std::string out;

    /// Sorted `key=value` lines; floats with 17 significant digits.
    std::string canonical() const;
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Applies `key=value` lines (blank lines and `#` comments ignored) on top of
/// cfg. Throws IngestError on unknown keys or malformed values.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Test functions known by name.
const std::vector<std::string>& known_functions();

/// Coefficients described by cfg.
RecurrenceCoefficients make_coefficients(const RunConfig& cfg);

}  // namespace qorth::cli
