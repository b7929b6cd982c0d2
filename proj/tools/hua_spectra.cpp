// Command-line front end: validity checks, spectrum tables, q-sweeps and ground-state dumps
// for the D-dimensional Hua potential.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hua/commands.hpp"
#include "hua/errors.hpp"

namespace {

struct Overrides
{
    std::string config_path;
    bool force{false};
    std::optional<std::string> format, out, modes, nrmax, sweep;
    std::optional<int> lmax, l, samples, grid_points, D;
    std::optional<double> V0, b_h, r_e, q, mass_factor;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config_path, "key = value parameter file");
    cmd->add_flag("--force", o.force, "evaluate outside the validity window (rows marked invalid)");
    cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--modes", o.modes, "comma list of closed, numeric-pekeris, numeric-exact");
    cmd->add_option("--lmax", o.lmax, "largest angular momentum");
    cmd->add_option("--nrmax", o.nrmax, "largest radial quantum number, or 'all' for every bound level");
    cmd->add_option("--sweep", o.sweep, "START:END:STEPS range of q");
    cmd->add_option("--l", o.l, "angular momentum of the wavefunction dump");
    cmd->add_option("--samples", o.samples, "samples in the wavefunction dump");
    cmd->add_option("--grid-points", o.grid_points, "interior points of the coarsest FD grid");
    cmd->add_option("--V0", o.V0, "well depth");
    cmd->add_option("--bh", o.b_h, "range parameter b_h");
    cmd->add_option("--re", o.r_e, "equilibrium radius r_e");
    cmd->add_option("--q", o.q, "deformation parameter q");
    cmd->add_option("--mass-factor", o.mass_factor, "2 mu / hbar^2");
    cmd->add_option("--D", o.D, "spatial dimension");
}

hua::RunConfig resolve(Overrides const& o)
{
    hua::RunConfig cfg;
    if (!o.config_path.empty()) {
        cfg = hua::load_config(o.config_path);
    }
    auto set = [&](char const* key, auto const& v) {
        if (v) {
            if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
                hua::apply_setting(cfg, key, *v, std::string("--") + key);
            } else {
                hua::apply_setting(cfg, key, std::to_string(*v), std::string("--") + key);
            }
        }
    };
    set("format", o.format);
    set("out", o.out);
    set("modes", o.modes);
    set("n_r_max", o.nrmax);
    set("sweep", o.sweep);
    set("l_max", o.lmax);
    set("l", o.l);
    set("samples", o.samples);
    set("grid_points", o.grid_points);
    set("D", o.D);
    /* doubles bypass the text round trip to keep full precision */
    if (o.V0) cfg.parameters.V0 = *o.V0;
    if (o.b_h) cfg.parameters.b_h = *o.b_h;
    if (o.r_e) cfg.parameters.r_e = *o.r_e;
    if (o.q) cfg.parameters.q = *o.q;
    if (o.mass_factor) cfg.parameters.mass_factor = *o.mass_factor;
    if (o.force) {
        cfg.force = true;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound-state spectra of the D-dimensional Hua potential"};
    app.require_subcommand(1);

    Overrides o;
    auto* validate     = app.add_subcommand("validate", "check e^{-b_h r_e} <= q < 1");
    auto* spectrum     = app.add_subcommand("spectrum", "closed-form and finite-difference energy table");
    auto* sweep        = app.add_subcommand("sweep-q", "energies across a range of q");
    auto* wavefunction = app.add_subcommand("wavefunction", "closed-form ground state R_{0,l}(r)");
    for (auto* c : {validate, spectrum, sweep, wavefunction}) {
        add_common(c, o);
    }

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return hua::exit_code::config;
    }

    hua::RunConfig cfg;
    try {
        cfg = resolve(o);
    } catch (hua::ConfigError const& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return hua::exit_code::config;
    }

    if (validate->parsed()) {
        return hua::cmd_validate(cfg, std::cout, std::cerr);
    }
    if (spectrum->parsed()) {
        return hua::cmd_spectrum(cfg, std::cout, std::cerr);
    }
    if (sweep->parsed()) {
        return hua::cmd_sweep_q(cfg, std::cout, std::cerr);
    }
    return hua::cmd_wavefunction(cfg, std::cout, std::cerr);
}
