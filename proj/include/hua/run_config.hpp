#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "hua/hua_model.hpp"
#include "hua/susy_spectrum.hpp"

namespace hua {

enum class OutputFormat
{
    csv,
    json
};

struct SweepRange
{
    double q_start{0};
    double q_end{0};
    int steps{2};
};

struct RunConfig
{
    HuaParameters parameters;
    int l_max{0};
    /// nullopt: every bound level.
    std::optional<int> n_r_max;
    std::set<Method> modes{Method::closed_form};
    std::optional<SweepRange> sweep;
    OutputFormat format{OutputFormat::csv};
    /// Empty: write to stdout.
    std::string out_path;
    bool force{false};
    /// Angular momentum of the wavefunction dump.
    int l{0};
    /// Samples in the wavefunction dump.
    int samples{4001};
    /// Interior points of the coarsest finite-difference grid.
    int grid_points{4000};

    /// Throws ConfigError on inconsistent settings.
    void check() const;
};

/// Flat `key = value` text, '#' starts a comment. Errors carry the line number.
/// Keys: V0 b_h r_e q mass_factor D l_max n_r_max modes sweep format out force l samples grid_points.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(std::string const& path, RunConfig base = {});

/// Applies one key/value pair; `where` prefixes error messages.
void apply_setting(RunConfig& cfg, std::string const& key, std::string const& value, std::string const& where);

std::set<Method> parse_modes(std::string const& list);
SweepRange parse_sweep(std::string const& text);
std::optional<int> parse_nr_max(std::string const& value);

} // namespace hua
