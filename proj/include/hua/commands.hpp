#pragma once

/** \file commands.hpp
 *
 *  \brief Subcommands of the hua_spectra tool. The row builders are separate from the printing
 *         cmd_* wrappers so that tables can be produced and checked without touching files.
 */

#include <iosfwd>
#include <vector>

#include "hua/eigensolver.hpp"
#include "hua/report.hpp"
#include "hua/run_config.hpp"

namespace hua {

namespace exit_code {
inline constexpr int ok          = 0;
inline constexpr int internal    = 1;
inline constexpr int validation  = 2;
inline constexpr int convergence = 3;
inline constexpr int config      = 4;
} // namespace exit_code

/// Numeric solver options derived from a run configuration.
SolveOptions solve_options(RunConfig const& cfg);

/// One row per (l, n_r), sorted by (l, n_r). Throws ValidityError outside the validity window
/// unless cfg.force is set, in which case rows carry validity = false.
std::vector<ReportRow> spectrum_rows(RunConfig const& cfg);

/// Rows for every sweep point, sorted by (l, n_r, q). Points outside e^{-b_h r_e} <= q < 1 get one
/// energy-free row per l unless cfg.force is set. Throws ValidityError when the sweep range misses
/// the window entirely.
std::vector<ReportRow> sweep_rows(RunConfig const& cfg);

struct WavefunctionSample
{
    double r{0};
    double R_unnormalized{0};
    double R_normalized{0};
};

/// Samples of the closed-form ground state for l = cfg.l from the pole out to where it has decayed
/// below 1e-9 of its peak. Throws AdmissibilityError when A + B <= 0.
std::vector<WavefunctionSample> wavefunction_samples(RunConfig const& cfg);

void write_wavefunction_csv(std::vector<WavefunctionSample> const& samples, std::ostream& out);

/// Each command prints diagnostics to `log`, writes its table to cfg.out_path (atomically) or to
/// `out`, and returns one of the exit codes above.
int cmd_validate(RunConfig const& cfg, std::ostream& out, std::ostream& log);
int cmd_spectrum(RunConfig const& cfg, std::ostream& out, std::ostream& log);
int cmd_sweep_q(RunConfig const& cfg, std::ostream& out, std::ostream& log);
int cmd_wavefunction(RunConfig const& cfg, std::ostream& out, std::ostream& log);

} // namespace hua
