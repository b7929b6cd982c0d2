#include "hua/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "hua/errors.hpp"

namespace hua {

SolveOptions solve_options(RunConfig const& cfg)
{
    SolveOptions opt;
    opt.grid.n_points = cfg.grid_points;
    return opt;
}

namespace {

CentrifugalMode centrifugal_of(Method m)
{
    return m == Method::numeric_exact ? CentrifugalMode::exact : CentrifugalMode::pekeris;
}

/// Rows for one parameter set; the gate has already been decided by the caller.
std::vector<ReportRow> rows_for(HuaParameters const& p, RunConfig const& cfg, bool valid)
{
    auto pek = pekeris_coefficients(p);
    auto opt = solve_options(cfg);

    std::map<std::pair<int, Method>, std::future<SpectrumResult>> numeric;
    for (int l = 0; l <= cfg.l_max; ++l) {
        for (Method m : cfg.modes) {
            if (m != Method::closed_form) {
                numeric[{l, m}] = std::async(std::launch::async, [=] { return solve_bound_states(p, l, centrifugal_of(m), opt); });
            }
        }
    }
    std::map<std::pair<int, Method>, SpectrumResult> solved;
    for (auto& [key, fut] : numeric) {
        solved.emplace(key, fut.get());
    }

    std::vector<ReportRow> rows;
    for (int l = 0; l <= cfg.l_max; ++l) {
        bool closed = cfg.modes.count(Method::closed_form) > 0;
        std::string closed_note;

        int levels = 0;
        if (cfg.n_r_max) {
            levels = *cfg.n_r_max + 1;
        } else if (closed) {
            try {
                levels = count_bound_states(l, p, pek);
            } catch (Error const& e) {
                closed_note = e.what();
                levels      = 0;
            }
        } else {
            auto it = solved.find({l, Method::numeric_pekeris});
            if (it == solved.end()) {
                it = solved.find({l, Method::numeric_exact});
            }
            levels = static_cast<int>(it->second.levels.size());
        }
        if (levels == 0 && !closed_note.empty()) {
            ReportRow row;
            row.D        = p.D;
            row.l        = l;
            row.q        = p.q;
            row.validity = valid;
            row.note     = closed_note;
            rows.push_back(std::move(row));
            continue;
        }

        for (int n = 0; n < levels; ++n) {
            ReportRow row;
            row.D        = p.D;
            row.l        = l;
            row.n_r      = n;
            row.q        = p.q;
            row.validity = valid;
            if (closed) {
                try {
                    row.E_closed = energy_level({n, l}, p, pek, Gate::force).energy;
                } catch (Error const& e) {
                    row.note = e.what();
                }
            }
            for (auto const& [key, res] : solved) {
                if (key.first != l || static_cast<std::size_t>(n) >= res.levels.size()) {
                    continue;
                }
                double e = res.levels[n].energy;
                if (key.second == Method::numeric_pekeris) {
                    row.E_numeric_pekeris = e;
                } else {
                    row.E_numeric_exact = e;
                }
            }
            fill_derived(row);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void emit_rows(std::vector<ReportRow> const& rows, RunConfig const& cfg, std::ostream& out)
{
    std::ostringstream s;
    if (cfg.format == OutputFormat::json) {
        write_json(rows, s);
    } else {
        write_csv(rows, s);
    }
    if (cfg.out_path.empty()) {
        out << s.str();
    } else {
        write_file_atomic(cfg.out_path, s.str());
    }
}

template <class F>
int guarded(std::ostream& log, F&& body)
{
    try {
        return body();
    } catch (ConfigError const& e) {
        log << "config error: " << e.what() << '\n';
        return exit_code::config;
    } catch (ConvergenceError const& e) {
        log << "numerical non-convergence: " << e.what() << '\n';
        return exit_code::convergence;
    } catch (DomainError const& e) {
        log << "validation failed: " << e.what() << '\n';
        return exit_code::validation;
    } catch (ValidityError const& e) {
        log << "validation failed: " << e.what() << '\n';
        return exit_code::validation;
    } catch (AdmissibilityError const& e) {
        log << "validation failed: " << e.what() << '\n';
        return exit_code::validation;
    } catch (Error const& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

} // namespace

std::vector<ReportRow> spectrum_rows(RunConfig const& cfg)
{
    cfg.check();
    auto rep = validate_parameters(cfg.parameters);
    if (!rep.valid && !cfg.force) {
        throw ValidityError(rep.message);
    }
    return rows_for(cfg.parameters, cfg, rep.valid);
}

std::vector<ReportRow> sweep_rows(RunConfig const& cfg)
{
    cfg.check();
    if (!cfg.sweep) {
        throw ConfigError("sweep-q needs a sweep range (--sweep START:END:STEPS)");
    }
    auto const& sw = *cfg.sweep;
    HuaParameters p = cfg.parameters;
    p.q             = 0.5;
    check_physical(p);
    double thr = validity_threshold(p);
    if (!(std::max(sw.q_start, thr) < std::min(sw.q_end, 1.0))) {
        throw ValidityError("sweep range [" + std::to_string(sw.q_start) + ", " + std::to_string(sw.q_end) +
                            "] misses the validity window [" + std::to_string(thr) + ", 1)");
    }

    std::vector<ReportRow> rows;
    for (int k = 0; k < sw.steps; ++k) {
        p.q = sw.q_start + (sw.q_end - sw.q_start) * k / (sw.steps - 1);
        bool defined = p.q > -1 && p.q < 1;
        bool valid   = defined && thr <= p.q;
        if (valid || (defined && cfg.force && p.q != 0)) {
            auto part = rows_for(p, cfg, valid);
            rows.insert(rows.end(), part.begin(), part.end());
            continue;
        }
        for (int l = 0; l <= cfg.l_max; ++l) {
            ReportRow row;
            row.D        = p.D;
            row.l        = l;
            row.q        = p.q;
            row.validity = false;
            row.note     = defined ? "outside validity window" : "q outside (-1, 1)";
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](ReportRow const& a, ReportRow const& b) {
        return std::tie(a.l, a.n_r, a.q) < std::tie(b.l, b.n_r, b.q);
    });
    return rows;
}

std::vector<WavefunctionSample> wavefunction_samples(RunConfig const& cfg)
{
    cfg.check();
    auto const& p = cfg.parameters;
    auto rep      = validate_parameters(p);
    if (!rep.valid && !cfg.force) {
        throw ValidityError(rep.message);
    }
    auto pek = pekeris_coefficients(p);
    auto eff = effective_coefficients(p, cfg.l, pek);
    auto s   = superpotential_params(eff);
    if (!s.admissible) {
        throw AdmissibilityError("ground state not normalizable: A + B = " + std::to_string(s.A + s.B) + " <= 0");
    }

    bool pole   = s.x0() >= -1.0;
    double x_lo = pole ? s.x0() : -1.0;
    /* extend until the exponential tail is negligible against the peak */
    double x_max = 30.0 / s.alpha;
    for (;;) {
        double peak = 0;
        for (int i = 1; i <= 2000; ++i) {
            peak = std::max(peak, ground_state_wavefunction(x_lo + (x_max - x_lo) * i / 2000.0, s));
        }
        if (ground_state_wavefunction(x_max, s) < 1e-9 * peak) {
            break;
        }
        x_max *= 2;
    }

    int n    = cfg.samples;
    double N = ground_state_normalization(s, p.r_e, x_max, n);
    std::vector<WavefunctionSample> out(n);
    for (int i = 0; i < n; ++i) {
        double x = x_lo + (x_max - x_lo) * i / (n - 1);
        double R = (i == 0 && pole) ? 0.0 : ground_state_wavefunction(x, s);
        out[i]   = {p.r_e * (1 + x), R, N * R};
    }
    return out;
}

void write_wavefunction_csv(std::vector<WavefunctionSample> const& samples, std::ostream& out)
{
    out << "r,R_unnormalized,R_normalized\n";
    char buf[96];
    for (auto const& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.r, s.R_unnormalized, s.R_normalized);
        out << buf;
    }
}

int cmd_validate(RunConfig const& cfg, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        auto rep = validate_parameters(cfg.parameters);
        out.precision(10);
        out << "threshold e^{-b_h r_e} = " << rep.threshold << '\n';
        out << "q                      = " << rep.q << '\n';
        if (rep.singularity_radius) {
            out << "singularity radius r0  = " << *rep.singularity_radius << '\n';
        } else {
            out << "singularity radius r0  = none (q <= 0)\n";
        }
        if (rep.valid) {
            out << "PASS: e^{-b_h r_e} <= q < 1\n";
            return exit_code::ok;
        }
        out << "FAIL: " << rep.message << '\n';
        if (cfg.force) {
            log << "warning: validity gate overridden by --force\n";
            return exit_code::ok;
        }
        return exit_code::validation;
    });
}

int cmd_spectrum(RunConfig const& cfg, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        if (cfg.force && !validate_parameters(cfg.parameters).valid) {
            log << "warning: parameters outside the validity window; rows marked validity=false\n";
        }
        emit_rows(spectrum_rows(cfg), cfg, out);
        return exit_code::ok;
    });
}

int cmd_sweep_q(RunConfig const& cfg, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        emit_rows(sweep_rows(cfg), cfg, out);
        return exit_code::ok;
    });
}

int cmd_wavefunction(RunConfig const& cfg, std::ostream& out, std::ostream& log)
{
    return guarded(log, [&] {
        std::ostringstream s;
        write_wavefunction_csv(wavefunction_samples(cfg), s);
        if (cfg.out_path.empty()) {
            out << s.str();
        } else {
            write_file_atomic(cfg.out_path, s.str());
        }
        return exit_code::ok;
    });
}

} // namespace hua
