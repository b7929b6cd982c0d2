#include "hua/susy_spectrum.hpp"

#include <cmath>
#include <limits>

#include "hua/errors.hpp"

namespace hua {

double SusyState::x0() const
{
    if (q <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log(q) / alpha;
}

SusyState superpotential_params(EffectiveCoefficients const& eff)
{
    double const alpha = eff.alpha;
    double radicand    = 1 - 4 * eff.V1 / (alpha * alpha);
    if (radicand < 0) {
        throw NoRealSolutionError("superpotential amplitude: 1 - 4 V1/alpha^2 < 0");
    }
    SusyState s;
    s.alpha = alpha;
    s.q     = eff.q;
    s.V1    = eff.V1;
    s.V2    = eff.V2;
    s.A     = -0.5 * alpha * (1 + std::sqrt(radicand));
    s.B     = -0.5 * (s.A + (eff.V1 + eff.V2) / s.A);
    s.a0    = s.A;
    s.gs_energy_shifted = -s.B * s.B;
    s.admissible        = s.A + s.B > 0;
    if (!(s.A < 0)) {
        throw NoRealSolutionError("superpotential amplitude A must be negative");
    }
    return s;
}

namespace {

double checked_u(double x, SusyState const& s)
{
    if (x <= s.x0()) {
        throw SingularityError("superpotential evaluated at or below the pole x0");
    }
    return u_of_x(x, s.alpha, s.q);
}

} // namespace

double superpotential_value(double x, SusyState const& s)
{
    return s.A * checked_u(x, s) + s.B;
}

double superpotential_derivative(double x, SusyState const& s)
{
    double u = checked_u(x, s);
    return s.A * s.alpha * (u - u * u);
}

double ground_state_wavefunction(double x, SusyState const& s)
{
    if (x <= s.x0()) {
        throw SingularityError("ground state evaluated at or below the pole x0");
    }
    double den = one_minus_q_exp(x, s.alpha, s.q);
    return std::exp(-(s.A + s.B) * x - (s.A / s.alpha) * std::log(den));
}

double ground_state_normalization(SusyState const& s, double r_e, double x_max, int n_samples)
{
    if (n_samples < 3) {
        throw ConfigError("normalization needs at least 3 samples");
    }
    /* left end is the pole, or r = 0 when the pole lies at negative r */
    bool pole   = s.x0() >= -1.0;
    double x_lo = pole ? s.x0() : -1.0;
    double h    = (x_max - x_lo) / (n_samples - 1) * r_e;
    double sum  = 0;
    for (int i = 0; i < n_samples; ++i) {
        double x = x_lo + (x_max - x_lo) * i / (n_samples - 1);
        double R = (i == 0 && pole) ? 0.0 : ground_state_wavefunction(x, s);
        double w = (i == 0 || i == n_samples - 1) ? 0.5 : 1.0;
        sum += w * R * R;
    }
    return 1 / std::sqrt(sum * h);
}

PartnerPotentials partner_potentials(double x, double a, double S, double alpha, double q)
{
    if (a == 0) {
        throw DegenerateLadderError("partner potentials need a nonzero ladder value");
    }
    /* phi^2 -/+ phi' = a(a +/- alpha) u(u - 1) - S u + b^2; expanded so the u-dependent
       parts of V+(a_k) and V-(a_{k+1}) cancel term by term near the pole */
    double u  = u_of_x(x, alpha, q);
    double b  = -0.5 * (a + S / a);
    double uu = u * (u - 1);
    return {a * (a + alpha) * uu - S * u + b * b, a * (a - alpha) * uu - S * u + b * b};
}

double shape_invariance_remainder(double a_prev, double a_next, double V1, double V2)
{
    if (a_prev == 0 || a_next == 0) {
        throw DegenerateLadderError("ladder value hit zero");
    }
    double S  = V1 + V2;
    double tp = a_prev + S / a_prev;
    double tn = a_next + S / a_next;
    return 0.25 * (tp * tp - tn * tn);
}

double ladder_value(SusyState const& s, int k)
{
    return s.a0 - k * s.alpha;
}

double shifted_eigenvalue(int n_r, SusyState const& s)
{
    double a = ladder_value(s, n_r);
    if (a == 0) {
        throw DegenerateLadderError("a0 - n_r alpha = 0");
    }
    double t = a + (s.V1 + s.V2) / a;
    return -0.25 * t * t;
}

std::string_view to_string(Method m)
{
    switch (m) {
        case Method::closed_form:
            return "closed-form";
        case Method::numeric_pekeris:
            return "numeric-pekeris";
        case Method::numeric_exact:
            return "numeric-exact";
    }
    return "?";
}

double delta_l(HuaParameters const& p, int l, PekerisCoefficients const& pek)
{
    double q   = p.q;
    double bb  = p.b_h * p.b_h;
    double F   = static_cast<double>(centrifugal_factor(p.D, l));
    double t   = 1 - 1 / q;
    double rad = 0.25 + p.mass_factor * p.V0 / bb * t * t + F / (4 * bb * p.r_e * p.r_e) * pek.D2 / (q * q);
    if (rad < 0) {
        throw NoRealSolutionError("delta_l radicand is negative (attractive centrifugal term too strong)");
    }
    return std::sqrt(rad);
}

double lambda_l(HuaParameters const& p, int l, PekerisCoefficients const& pek)
{
    double q  = p.q;
    double bb = p.b_h * p.b_h;
    double F  = static_cast<double>(centrifugal_factor(p.D, l));
    return p.mass_factor * p.V0 / bb * (1 / (q * q) - 1) + F / (4 * bb * p.r_e * p.r_e) * (pek.D2 / (q * q) - pek.D1 / q);
}

SpectrumLevel energy_level(QuantumNumbers const& qn, HuaParameters const& p, PekerisCoefficients const& pek, Gate gate)
{
    check_quantum_numbers(qn);
    auto rep = validate_parameters(p);
    if (!rep.valid && gate == Gate::strict) {
        throw ValidityError(rep.message);
    }
    if (p.q == 0) {
        throw DomainError("closed-form spectrum requires q != 0");
    }

    SpectrumLevel lev;
    lev.n_r      = qn.n_r;
    lev.l        = qn.l;
    lev.valid    = rep.valid;
    lev.method   = Method::closed_form;
    lev.delta_l  = delta_l(p, qn.l, pek);
    lev.lambda_l = lambda_l(p, qn.l, pek);
    lev.N_r      = qn.n_r + lev.delta_l + 0.5;

    double N2 = lev.N_r * lev.N_r;
    if (N2 > lev.lambda_l) {
        throw UnboundLevelError("level n_r = " + std::to_string(qn.n_r) + ", l = " + std::to_string(qn.l) +
                                " is unbound (N_r^2 > lambda_l)");
    }
    lev.marginal = N2 == lev.lambda_l;

    double q    = p.q;
    double m    = p.mass_factor;
    double F    = static_cast<double>(centrifugal_factor(p.D, qn.l));
    double lam  = lev.lambda_l;
    lev.energy  = 0.5 * p.V0 * (1 + 1 / (q * q));
    lev.energy -= p.b_h * p.b_h / (4 * m) * (N2 + lam * lam / N2);
    lev.energy += F / (4 * m * p.r_e * p.r_e) * (pek.D0 + (pek.D2 / q - pek.D1) / (2 * q));
    return lev;
}

double energy_via_ladder(QuantumNumbers const& qn, HuaParameters const& p, PekerisCoefficients const& pek)
{
    check_quantum_numbers(qn);
    auto eff = effective_coefficients(p, qn.l, pek);
    auto s   = superpotential_params(eff);
    return (shifted_eigenvalue(qn.n_r, s) + eff.const_shift) / (p.r_e * p.r_e * p.mass_factor);
}

double pekeris_continuum(HuaParameters const& p, int l, PekerisCoefficients const& pek)
{
    return p.V0 + centrifugal_strength(p, l) * pek.D0 / p.mass_factor;
}

int count_bound_states(int l, HuaParameters const& p, PekerisCoefficients const& pek)
{
    double lam = lambda_l(p, l, pek);
    if (lam <= 0) {
        return 0;
    }
    double d = delta_l(p, l, pek);
    int n    = static_cast<int>(std::floor(std::sqrt(lam) - d - 0.5));
    n        = std::max(n, -1);
    /* floor() can be off by one near the boundary; settle on the defining inequality */
    auto bound = [&](int k) {
        double N = k + d + 0.5;
        return N * N <= lam;
    };
    while (n >= 0 && !bound(n)) {
        --n;
    }
    while (bound(n + 1)) {
        ++n;
    }
    return n + 1;
}

} // namespace hua
