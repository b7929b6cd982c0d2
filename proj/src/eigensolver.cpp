#include "hua/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hua/errors.hpp"
#include "hua/susy_spectrum.hpp"

namespace hua {

double GridSpec::step() const
{
    if (spacing == Spacing::uniform) {
        return (r_max - r_min) / (n_points + 1);
    }
    return (std::log(r_max - origin) - std::log(r_min - origin)) / (n_points + 1);
}

std::vector<double> GridSpec::nodes() const
{
    std::vector<double> r(n_points);
    double h = step();
    if (spacing == Spacing::uniform) {
        for (int i = 0; i < n_points; ++i) {
            r[i] = r_min + (i + 1) * h;
        }
    } else {
        double rho0 = std::log(r_min - origin);
        for (int i = 0; i < n_points; ++i) {
            r[i] = origin + std::exp(rho0 + (i + 1) * h);
        }
    }
    return r;
}

GridSpec GridSpec::refined() const
{
    GridSpec g = *this;
    g.n_points = 2 * n_points + 1;
    return g;
}

void GridSpec::check() const
{
    if (n_points < 3) {
        throw ConfigError("grid needs at least 3 interior points");
    }
    if (!(r_min < r_max)) {
        throw ConfigError("grid window must satisfy r_min < r_max");
    }
    if (spacing == Spacing::logarithmic && !(r_min > origin)) {
        throw ConfigError("logarithmic grid needs r_min > origin");
    }
    if (refinement_levels < 1) {
        throw ConfigError("refinement_levels must be >= 1");
    }
}

GridSpec build_grid(HuaParameters const& p, GridConfig const& config)
{
    check_physical(p);
    auto r0 = singularity_radius(p);
    bool pole = r0 && *r0 >= 0;

    GridSpec g;
    g.spacing           = config.spacing;
    g.n_points          = config.n_points;
    g.refinement_levels = config.refinement_levels;
    g.origin            = pole ? *r0 : 0.0;
    g.r_max             = p.r_e + config.far_range / p.b_h;

    double eps = config.wall_offset * p.r_e;
    if (pole) {
        /* V decreases monotonically from the pole to r_e: shrink until the wall criterion holds */
        double e = 0.5 * (p.r_e - *r0);
        while (e > 0 && potential_value(*r0 + e, p) < config.wall_ratio * p.V0) {
            e *= 0.5;
        }
        eps = config.spacing == Spacing::logarithmic ? std::min(e, eps) : e;
    }
    g.r_min = g.origin + eps;

    if (config.r_min) {
        if (r0 && !(*config.r_min > *r0)) {
            throw ConfigError("requested r_min lies at or below the pole r0");
        }
        g.r_min = *config.r_min;
    }
    if (config.r_max) {
        g.r_max = *config.r_max;
    }
    if (!(g.r_min < p.r_e && p.r_e < g.r_max)) {
        throw ConfigError("grid window excludes the well minimum r_e");
    }
    g.check();
    return g;
}

namespace {

DiscreteHamiltonian make_pencil(GridSpec const& grid, std::function<double(double)> const& U, double threshold)
{
    grid.check();
    DiscreteHamiltonian h;
    h.grid      = grid;
    h.threshold = threshold;
    h.nodes     = grid.nodes();
    std::size_t n = h.nodes.size();
    h.diagonal.resize(n);
    h.weight.resize(n);
    h.off_diagonal.assign(n - 1, 0.0);

    double step = grid.step();
    double ih2  = 1 / (step * step);
    if (grid.spacing == Spacing::uniform) {
        for (std::size_t i = 0; i < n; ++i) {
            h.diagonal[i] = 2 * ih2 + U(h.nodes[i]);
            h.weight[i]   = 1;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double t      = h.nodes[i] - grid.origin;
            h.diagonal[i] = 2 * ih2 + 0.25 + t * t * U(h.nodes[i]);
            h.weight[i]   = t * t;
        }
    }
    std::fill(h.off_diagonal.begin(), h.off_diagonal.end(), -ih2);
    return h;
}

} // namespace

DiscreteHamiltonian assemble_potential(GridSpec const& grid, std::function<double(double)> const& U, double threshold)
{
    return make_pencil(grid, U, threshold);
}

DiscreteHamiltonian assemble(HuaParameters const& p, int l, GridSpec const& grid, CentrifugalMode mode)
{
    double A_l = centrifugal_strength(p, l);
    double m   = p.mass_factor;
    DiscreteHamiltonian h;
    if (mode == CentrifugalMode::pekeris) {
        auto pek = pekeris_coefficients(p);
        h = make_pencil(
            grid, [&](double r) { return m * potential_value(r, p) + A_l * pekeris_form(r, p, pek); },
            m * p.V0 + A_l * pek.D0);
    } else {
        double r_e2 = p.r_e * p.r_e;
        h = make_pencil(
            grid, [&](double r) { return m * potential_value(r, p) + A_l * r_e2 / (r * r); }, m * p.V0);
    }
    h.mode = mode;
    return h;
}

int sturm_count(DiscreteHamiltonian const& h, double sigma)
{
    std::size_t n = h.size();
    if (n == 0) {
        return 0;
    }
    double bmax = 0;
    for (double b : h.off_diagonal) {
        bmax = std::max(bmax, std::abs(b));
    }
    double pivmin = std::numeric_limits<double>::min() * std::max(1.0, bmax * bmax);

    int count = 0;
    double d  = h.diagonal[0] - sigma * h.weight[0];
    for (std::size_t i = 0;; ++i) {
        if (std::abs(d) < pivmin) {
            d = -pivmin;
        }
        if (d < 0) {
            ++count;
        }
        if (i + 1 == n) {
            break;
        }
        double b = h.off_diagonal[i];
        d        = h.diagonal[i + 1] - sigma * h.weight[i + 1] - b * b / d;
    }
    return count;
}

namespace {

/// Rescales T so that its entries stay well inside the floating-point range; eigenvalues scale alike.
double pencil_scale(DiscreteHamiltonian const& h)
{
    double amax = 0;
    for (double a : h.diagonal) {
        amax = std::max(amax, std::abs(a));
    }
    for (double b : h.off_diagonal) {
        amax = std::max(amax, std::abs(b));
    }
    if (amax > 1e100 || (amax > 0 && amax < 1e-100)) {
        return 1 / amax;
    }
    return 1;
}

} // namespace

std::vector<double> eigenvalues_below(DiscreteHamiltonian const& h_in, double bound, int k_max)
{
    if (!std::isfinite(bound)) {
        throw ConfigError("eigenvalue bound must be finite");
    }
    if (k_max < 1) {
        throw ConfigError("k_max must be >= 1");
    }
    double scale = pencil_scale(h_in);
    DiscreteHamiltonian scaled;
    DiscreteHamiltonian const* hp = &h_in;
    if (scale != 1) {
        scaled = h_in;
        for (auto& a : scaled.diagonal) {
            a *= scale;
        }
        for (auto& b : scaled.off_diagonal) {
            b *= scale;
        }
        hp = &scaled;
    }
    DiscreteHamiltonian const& h = *hp;
    double top = bound * scale;

    int total = std::min(sturm_count(h, top), k_max);
    std::vector<double> out;
    if (total == 0) {
        return out;
    }

    /* Gershgorin bound for the pencil: T - sigma W is diagonally dominant below min_i (a_i - r_i)/w_i */
    std::size_t n = h.size();
    double lo     = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(h.off_diagonal[i - 1]) : 0.0) + (i + 1 < n ? std::abs(h.off_diagonal[i]) : 0.0);
        lo       = std::min(lo, (h.diagonal[i] - r) / h.weight[i]);
    }
    lo -= 1e-3 * std::max(1.0, std::abs(lo));

    double tol = 1e-12 * std::max(1.0, std::abs(bound)) * scale;
    out.reserve(total);
    double left = lo;
    for (int j = 0; j < total; ++j) {
        double a = left;
        double b = top;
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) {
                break;
            }
            if (sturm_count(h, mid) > j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push_back(0.5 * (a + b) / scale);
        left = a;
    }
    return out;
}

namespace {

/// LU factorization of a tridiagonal matrix with partial pivoting (LAPACK gttrf layout).
struct TridiagonalLU
{
    std::vector<double> dl, d, du, du2;
    std::vector<char> swapped;

    TridiagonalLU(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup)
        : dl(std::move(sub))
        , d(std::move(diag))
        , du(std::move(sup))
    {
        std::size_t n = d.size();
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, 0);
        double norm = 0;
        for (double v : d) {
            norm = std::max(norm, std::abs(v));
        }
        for (double v : du) {
            norm = std::max(norm, std::abs(v));
        }
        double tiny = std::numeric_limits<double>::epsilon() * std::max(norm, std::numeric_limits<double>::min());

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0) {
                    d[i] = tiny;
                }
                double fact = dl[i] / d[i];
                dl[i]       = fact;
                d[i + 1] -= fact * du[i];
            } else {
                double fact = d[i] / dl[i];
                d[i]        = dl[i];
                dl[i]       = fact;
                double temp = du[i];
                du[i]       = d[i + 1];
                d[i + 1]    = temp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i]    = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = 1;
            }
        }
        if (n > 0 && d[n - 1] == 0) {
            d[n - 1] = tiny;
        }
    }

    void solve(std::vector<double>& b) const
    {
        std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                double temp = b[i];
                b[i]        = b[i + 1];
                b[i + 1]    = temp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) {
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        }
        for (std::size_t i = n; i-- > 2;) {
            std::size_t k = i - 2;
            b[k]          = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
        }
    }
};

double weighted_norm(std::vector<double> const& v, std::vector<double> const& w)
{
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += w[i] * v[i] * v[i];
    }
    return std::sqrt(s);
}

} // namespace

std::vector<double> inverse_iteration(DiscreteHamiltonian const& h, double eigenvalue)
{
    std::size_t n = h.size();
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = h.diagonal[i] - eigenvalue * h.weight[i];
    }
    TridiagonalLU lu(h.off_diagonal, diag, h.off_diagonal);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 1.0 + 1e-3 * std::sin(0.37 * static_cast<double>(i));
    }
    double nrm = weighted_norm(x, h.weight);
    for (auto& v : x) {
        v /= nrm;
    }

    /* with the shift this close to the eigenvalue, later solves can pick up rounding noise,
       so the iterate with the smallest residual is kept */
    std::vector<double> y(n);
    std::vector<double> best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 50; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = h.weight[i] * x[i];
        }
        lu.solve(y);
        nrm = weighted_norm(y, h.weight);
        for (auto& v : y) {
            v /= nrm;
        }
        double overlap = 0;
        for (std::size_t i = 0; i < n; ++i) {
            overlap += h.weight[i] * x[i] * y[i];
        }
        x.swap(y);
        double res = relative_residual(h, eigenvalue, x);
        if (res < best_res) {
            best_res = res;
            best     = x;
        }
        if (std::abs(1 - std::abs(overlap)) < 1e-14) {
            break;
        }
    }
    x.swap(best);

    double peak = 0;
    for (double v : x) {
        peak = std::max(peak, std::abs(v));
    }
    for (double v : x) {
        if (std::abs(v) > 1e-6 * peak) {
            if (v < 0) {
                for (auto& e : x) {
                    e = -e;
                }
            }
            break;
        }
    }
    return x;
}

double relative_residual(DiscreteHamiltonian const& h, double eigenvalue, std::vector<double> const& phi)
{
    std::size_t n = h.size();
    double rmax = 0;
    double wmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (h.diagonal[i] - eigenvalue * h.weight[i]) * phi[i];
        if (i > 0) {
            r += h.off_diagonal[i - 1] * phi[i - 1];
        }
        if (i + 1 < n) {
            r += h.off_diagonal[i] * phi[i + 1];
        }
        rmax = std::max(rmax, std::abs(r));
        wmax = std::max(wmax, std::abs(h.weight[i] * phi[i]));
    }
    return rmax / (std::max(1.0, std::abs(eigenvalue)) * wmax);
}

int count_nodes(std::vector<double> const& v)
{
    double peak = 0;
    for (double e : v) {
        peak = std::max(peak, std::abs(e));
    }
    int nodes = 0;
    int sign  = 0;
    for (double e : v) {
        if (std::abs(e) <= 1e-8 * peak) {
            continue;
        }
        int s = e > 0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            ++nodes;
        }
        sign = s;
    }
    return nodes;
}

Eigenfunction radial_function(DiscreteHamiltonian const& h, std::vector<double> const& phi)
{
    Eigenfunction f;
    std::size_t n = h.size();
    f.r.reserve(n + 2);
    f.R.reserve(n + 2);
    f.r.push_back(h.grid.r_min);
    f.R.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
        double R = phi[i];
        if (h.grid.spacing == Spacing::logarithmic) {
            R *= std::sqrt(h.nodes[i] - h.grid.origin);
        }
        f.r.push_back(h.nodes[i]);
        f.R.push_back(R);
    }
    f.r.push_back(h.grid.r_max);
    f.R.push_back(0);

    double integral = 0;
    for (std::size_t i = 0; i + 1 < f.r.size(); ++i) {
        integral += 0.5 * (f.r[i + 1] - f.r[i]) * (f.R[i] * f.R[i] + f.R[i + 1] * f.R[i + 1]);
    }
    double c = 1 / std::sqrt(integral);
    for (auto& v : f.R) {
        v *= c;
    }
    f.nodes = count_nodes(f.R);
    return f;
}

SpectrumResult solve_bound_states(HuaParameters const& p, int l, CentrifugalMode mode, SolveOptions const& options)
{
    check_physical(p);
    if (l < 0) {
        throw DomainError("angular momentum must be non-negative");
    }
    double const m = p.mass_factor;

    GridConfig cfg = options.grid;
    for (int ext = 0;; ++ext) {
        GridSpec base = build_grid(p, cfg);

        std::vector<GridSpec> grids{base};
        for (int k = 0; k < base.refinement_levels; ++k) {
            grids.push_back(grids.back().refined());
        }
        std::vector<std::vector<double>> eig;
        double threshold = 0;
        DiscreteHamiltonian finest;
        for (std::size_t k = 0; k < grids.size(); ++k) {
            auto h    = assemble(p, l, grids[k], mode);
            threshold = h.threshold;
            eig.push_back(eigenvalues_below(h, threshold, options.k_max));
            if (k + 1 == grids.size()) {
                finest = std::move(h);
            }
        }
        auto const& fine   = eig.back();
        auto const& coarse = eig[eig.size() - 2];
        std::size_t count  = std::min(fine.size(), coarse.size());

        /* every level must have decayed well before the right wall, and a longer window must not
           reveal additional weakly bound levels */
        double span  = base.r_max - p.r_e;
        bool settled = true;
        for (std::size_t i = 0; i < count; ++i) {
            if (std::sqrt(std::max(0.0, threshold - fine[i])) * span < options.decay_target) {
                settled = false;
            }
        }
        if (settled && !cfg.r_max) {
            GridConfig wide = cfg;
            wide.far_range *= 8;
            wide.refinement_levels = 1;
            if (static_cast<std::size_t>(sturm_count(assemble(p, l, build_grid(p, wide), mode), threshold)) > count) {
                settled = false;
            }
        }
        if (!settled && !cfg.r_max && ext < options.max_extensions) {
            cfg.far_range *= 2;
            continue;
        }

        SpectrumResult res;
        res.mode             = mode;
        res.l                = l;
        res.threshold_energy = threshold / m;
        res.grid             = base;
        for (std::size_t i = 0; i < count; ++i) {
            NumericLevel lev;
            lev.n_r = static_cast<int>(i);
            for (auto const& e : eig) {
                lev.refinements.push_back(i < e.size() ? e[i] / m : std::numeric_limits<double>::quiet_NaN());
            }
            double ef = fine[i] / m;
            double ec = coarse[i] / m;
            double scale = std::max(std::abs(ef), std::abs(res.threshold_energy));
            if (std::abs(ef - ec) > options.convergence_tolerance * scale) {
                throw ConvergenceError("level " + std::to_string(i) + " differs by " + std::to_string(std::abs(ef - ec)) +
                                       " between the last two refinements");
            }
            lev.energy         = ef + (ef - ec) / 3;
            lev.error_estimate = std::abs(ef - ec) / 3;
            if (eig.size() >= 3 && i < eig[eig.size() - 3].size()) {
                double e0 = eig[eig.size() - 3][i];
                double e1 = coarse[i];
                double e2 = fine[i];
                if (e1 != e2) {
                    lev.convergence_ratio = (e0 - e1) / (e1 - e2);
                }
            }
            res.levels.push_back(std::move(lev));
        }
        if (options.eigenvectors) {
            for (std::size_t i = 0; i < count; ++i) {
                res.eigenfunctions.push_back(radial_function(finest, inverse_iteration(finest, fine[i])));
            }
        }
        return res;
    }
}

} // namespace hua
