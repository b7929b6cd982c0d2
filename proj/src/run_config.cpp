#include "hua/run_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "hua/errors.hpp"

namespace hua {

namespace {

std::string trim(std::string const& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T number(std::string const& s, std::string const& what)
{
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError(what + ": cannot parse '" + s + "' as a number");
    }
    return v;
}

bool boolean(std::string const& s, std::string const& what)
{
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    throw ConfigError(what + ": expected true/false, got '" + s + "'");
}

} // namespace

std::set<Method> parse_modes(std::string const& list)
{
    std::set<Method> modes;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto next = list.find(',', pos);
        auto item = trim(list.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (item == "closed" || item == "closed-form") {
            modes.insert(Method::closed_form);
        } else if (item == "numeric-pekeris" || item == "pekeris") {
            modes.insert(Method::numeric_pekeris);
        } else if (item == "numeric-exact" || item == "exact") {
            modes.insert(Method::numeric_exact);
        } else {
            throw ConfigError("unknown mode '" + item + "' (closed, numeric-pekeris, numeric-exact)");
        }
        if (next == std::string::npos) {
            break;
        }
        pos = next + 1;
    }
    return modes;
}

SweepRange parse_sweep(std::string const& text)
{
    auto a = text.find(':');
    auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) {
        throw ConfigError("sweep must be START:END:STEPS, got '" + text + "'");
    }
    SweepRange s;
    s.q_start = number<double>(trim(text.substr(0, a)), "sweep start");
    s.q_end   = number<double>(trim(text.substr(a + 1, b - a - 1)), "sweep end");
    s.steps   = number<int>(trim(text.substr(b + 1)), "sweep steps");
    return s;
}

std::optional<int> parse_nr_max(std::string const& value)
{
    if (value == "all" || value == "all-bound") {
        return std::nullopt;
    }
    return number<int>(value, "n_r_max");
}

void apply_setting(RunConfig& cfg, std::string const& key, std::string const& value, std::string const& where)
{
    auto& p = cfg.parameters;
    try {
        if (key == "V0") {
            p.V0 = number<double>(value, key);
        } else if (key == "b_h") {
            p.b_h = number<double>(value, key);
        } else if (key == "r_e") {
            p.r_e = number<double>(value, key);
        } else if (key == "q") {
            p.q = number<double>(value, key);
        } else if (key == "mass_factor") {
            p.mass_factor = number<double>(value, key);
        } else if (key == "D") {
            p.D = number<int>(value, key);
        } else if (key == "l_max") {
            cfg.l_max = number<int>(value, key);
        } else if (key == "n_r_max") {
            cfg.n_r_max = parse_nr_max(value);
        } else if (key == "modes") {
            cfg.modes = parse_modes(value);
        } else if (key == "sweep") {
            cfg.sweep = parse_sweep(value);
        } else if (key == "format") {
            if (value == "csv") {
                cfg.format = OutputFormat::csv;
            } else if (value == "json") {
                cfg.format = OutputFormat::json;
            } else {
                throw ConfigError("format must be csv or json");
            }
        } else if (key == "out") {
            cfg.out_path = value;
        } else if (key == "force") {
            cfg.force = boolean(value, key);
        } else if (key == "l") {
            cfg.l = number<int>(value, key);
        } else if (key == "samples") {
            cfg.samples = number<int>(value, key);
        } else if (key == "grid_points") {
            cfg.grid_points = number<int>(value, key);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    } catch (ConfigError const& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

RunConfig parse_config(std::istream& in, RunConfig cfg)
{
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        std::string where = "line " + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }
    return cfg;
}

RunConfig load_config(std::string const& path, RunConfig base)
{
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot open config file " + path);
    }
    try {
        return parse_config(f, std::move(base));
    } catch (ConfigError const& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void RunConfig::check() const
{
    if (l_max < 0 || l < 0) {
        throw ConfigError("l_max and l must be >= 0");
    }
    if (n_r_max && *n_r_max < 0) {
        throw ConfigError("n_r_max must be >= 0 or 'all'");
    }
    if (modes.empty()) {
        throw ConfigError("at least one mode is required");
    }
    if (sweep) {
        if (!(sweep->q_start < sweep->q_end)) {
            throw ConfigError("sweep requires q_start < q_end");
        }
        if (sweep->steps < 2) {
            throw ConfigError("sweep requires at least 2 steps");
        }
    }
    if (samples < 3) {
        throw ConfigError("samples must be >= 3");
    }
    if (grid_points < 3) {
        throw ConfigError("grid_points must be >= 3");
    }
}

} // namespace hua
