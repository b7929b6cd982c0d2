#pragma once

/** \file eigensolver.hpp
 *
 *  \brief Finite-difference oracle for the radial equation
 *
 *      -R'' + [m V(r) + centrifugal(r)] R = m E R,   R = 0 at both ends of the window,
 *
 *  with either the exact (D+2l-1)(D+2l-3)/(4 r^2) barrier or its Pekeris replacement.
 *
 *  Two grid layouts are supported. On a uniform grid the three-point stencil gives the usual
 *  tridiagonal matrix with 2/h^2 on the diagonal. On a logarithmic grid r = origin + e^rho the
 *  substitution R = e^{rho/2} phi turns the equation into
 *
 *      -phi'' + (1/4 + t^2 U) phi = m E t^2 phi,   t = r - origin,
 *
 *  which is discretized uniformly in rho. This gives a symmetric tridiagonal pencil (T, W) with
 *  W = diag(t^2), and resolves the (r - r0)^{1/2 + delta} behaviour at the pole to O(h^2).
 *  Eigenvalues of the pencil are located by Sturm counts on T - sigma W.
 */

#include <functional>
#include <optional>
#include <vector>

#include "hua/hua_model.hpp"

namespace hua {

enum class CentrifugalMode
{
    exact,
    pekeris
};

enum class Spacing
{
    uniform,
    logarithmic
};

struct GridSpec
{
    /// Point the logarithmic grid accumulates at (pole r0, or 0). Unused for uniform spacing.
    double origin{0};
    /// Left wall.
    double r_min{0};
    /// Right wall.
    double r_max{1};
    /// Interior points.
    int n_points{4000};
    /// Number of step halvings used for extrapolation.
    int refinement_levels{1};
    Spacing spacing{Spacing::logarithmic};

    /// h in r (uniform) or in rho = ln(r - origin) (logarithmic).
    double step() const;
    /// Interior nodes, r_min and r_max excluded.
    std::vector<double> nodes() const;
    /// Same window with 2 n + 1 interior points (step halved).
    GridSpec refined() const;
    /// Throws ConfigError if the window or point count is inconsistent.
    void check() const;
};

struct GridConfig
{
    /// r_max = r_e + far_range / b_h.
    double far_range{30};
    int n_points{4000};
    int refinement_levels{1};
    Spacing spacing{Spacing::logarithmic};
    /// The left wall sits where V exceeds wall_ratio * V0.
    double wall_ratio{1e6};
    /// Upper bound on the wall offset from the origin, in units of r_e (logarithmic spacing,
    /// and the q <= 0 case for both spacings).
    double wall_offset{1e-10};
    /// Explicit window; must contain r_e.
    std::optional<double> r_min;
    std::optional<double> r_max;
};

GridSpec build_grid(HuaParameters const& p, GridConfig const& config = {});

/// Symmetric tridiagonal pencil T - k W on the interior nodes, eigenvalue k = m E.
struct DiscreteHamiltonian
{
    std::vector<double> diagonal;
    /// off_diagonal[i] couples node i and i + 1; strictly negative.
    std::vector<double> off_diagonal;
    /// Diagonal of W (all ones on a uniform grid).
    std::vector<double> weight;
    std::vector<double> nodes;
    GridSpec grid;
    CentrifugalMode mode{CentrifugalMode::exact};
    /// r -> infinity limit of the mass-scaled effective potential.
    double threshold{0};

    std::size_t size() const
    {
        return diagonal.size();
    }
};

DiscreteHamiltonian assemble(HuaParameters const& p, int l, GridSpec const& grid, CentrifugalMode mode);

/// Pencil for -R'' + U(r) R on an arbitrary grid; used for model problems.
DiscreteHamiltonian assemble_potential(GridSpec const& grid, std::function<double(double)> const& U,
                                       double threshold);

/// Number of pencil eigenvalues strictly below sigma.
int sturm_count(DiscreteHamiltonian const& h, double sigma);

/// Ascending eigenvalues strictly below bound, at most k_max of them, bisected to 1e-12 * max(1, |bound|).
std::vector<double> eigenvalues_below(DiscreteHamiltonian const& h, double bound, int k_max);

/// Eigenvector of the pencil for a bracketed eigenvalue, normalized to phi^T W phi = 1 and signed so
/// that its first significant entry is positive.
std::vector<double> inverse_iteration(DiscreteHamiltonian const& h, double eigenvalue);

/// max_i |((T - k W) phi)_i| / (max(1, |k|) max_i |(W phi)_i|).
double relative_residual(DiscreteHamiltonian const& h, double eigenvalue, std::vector<double> const& phi);

/// Solution R(r) of the original radial equation on the grid, walls included.
struct Eigenfunction
{
    std::vector<double> r;
    std::vector<double> R;
    int nodes{0};
};

/// Converts a pencil eigenvector to R(r) with walls and trapezoid normalization in r.
Eigenfunction radial_function(DiscreteHamiltonian const& h, std::vector<double> const& phi);

/// Interior sign changes, ignoring entries below 1e-8 of the peak.
int count_nodes(std::vector<double> const& v);

struct NumericLevel
{
    int n_r{0};
    /// Richardson-extrapolated energy.
    double energy{0};
    /// |E_fine - E_coarse| / 3.
    double error_estimate{0};
    /// Energies on the successive refinements, coarsest first.
    std::vector<double> refinements;
    /// (E_0 - E_1)/(E_1 - E_2); present with at least two halvings.
    std::optional<double> convergence_ratio;
};

struct SolveOptions
{
    GridConfig grid;
    bool eigenvectors{false};
    int k_max{1000};
    /// Each level must satisfy kappa (r_max - r_e) >= decay_target, kappa^2 = threshold - m E.
    double decay_target{16};
    /// Maximum number of doublings of far_range.
    int max_extensions{8};
    /// Relative disagreement between the last two refinements that counts as non-convergence.
    double convergence_tolerance{1e-4};
};

struct SpectrumResult
{
    CentrifugalMode mode{CentrifugalMode::exact};
    int l{0};
    std::vector<NumericLevel> levels;
    /// Finest-grid eigenfunctions, when requested.
    std::vector<Eigenfunction> eigenfunctions;
    /// Continuum threshold in energy units.
    double threshold_energy{0};
    /// Coarsest grid of the final run.
    GridSpec grid;
};

/// Eigenvalues below the continuum on successive refinements, Richardson-extrapolated. The window is
/// widened until every level has decayed; throws ConvergenceError when refinements disagree.
SpectrumResult solve_bound_states(HuaParameters const& p, int l, CentrifugalMode mode, SolveOptions const& options = {});

} // namespace hua
