#include "hua/hua_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hua/errors.hpp"

namespace hua {

namespace {

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

} // namespace

void check_physical(HuaParameters const& p)
{
    if (!(p.V0 > 0) || !(p.b_h > 0) || !(p.r_e > 0) || !(p.mass_factor > 0)) {
        throw DomainError("V0, b_h, r_e and mass_factor must be positive");
    }
    if (p.D < 2) {
        throw DomainError("dimension D must be >= 2, got " + std::to_string(p.D));
    }
    if (p.q == 1.0) {
        throw DomainError("q = 1: the potential becomes a step potential, no bound states");
    }
    if (!(p.q > -1.0 && p.q < 1.0)) {
        throw DomainError("deformation parameter q = " + fmt(p.q) + " outside (-1, 1)");
    }
}

void check_quantum_numbers(QuantumNumbers const& qn)
{
    if (qn.n_r < 0 || qn.l < 0) {
        throw DomainError("quantum numbers must be non-negative");
    }
}

double validity_threshold(HuaParameters const& p)
{
    return std::exp(-p.b_h * p.r_e);
}

ValidityReport validate_parameters(HuaParameters const& p)
{
    check_physical(p);
    ValidityReport rep;
    rep.threshold          = validity_threshold(p);
    rep.q                  = p.q;
    rep.singularity_radius = singularity_radius(p);
    rep.valid              = rep.threshold <= p.q && p.q < 1.0;
    if (!rep.valid) {
        rep.message = "q = " + fmt(p.q) + " below threshold e^{-b_h r_e} = " + fmt(rep.threshold) +
                      ": Pekeris approximation and closed-form spectrum not valid (requires e^{-b_h r_e} <= q < 1)";
    }
    return rep;
}

std::optional<double> singularity_radius(HuaParameters const& p)
{
    if (p.q <= 0) {
        return std::nullopt;
    }
    return p.r_e + std::log(p.q) / p.b_h;
}

double one_minus_q_exp(double x, double alpha, double q)
{
    if (q > 0) {
        return -std::expm1(std::log(q) - alpha * x);
    }
    return 1.0 - q * std::exp(-alpha * x);
}

double pole_denominator(double r, HuaParameters const& p)
{
    return one_minus_q_exp(r - p.r_e, p.b_h, p.q);
}

double potential_value(double r, HuaParameters const& p)
{
    if (auto r0 = singularity_radius(p)) {
        double guard = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(*r0));
        if (r <= *r0 + guard) {
            throw SingularityError("r = " + fmt(r) + " at or below the pole r0 = " + fmt(*r0));
        }
    } else if (r <= 0) {
        throw DomainError("potential evaluated at non-positive radius");
    }
    double num = -std::expm1(-p.b_h * (r - p.r_e));
    double den = pole_denominator(r, p);
    double ratio = num / den;
    return p.V0 * ratio * ratio;
}

long long centrifugal_factor(int D, int l)
{
    long long a = D + 2LL * l - 1;
    return a * (a - 2);
}

double centrifugal_strength(HuaParameters const& p, int l)
{
    return static_cast<double>(centrifugal_factor(p.D, l)) / (4 * p.r_e * p.r_e);
}

double PekerisCoefficients::reconstruct(double x, double alpha, double q) const
{
    double y = std::exp(-alpha * x);
    double s = y / one_minus_q_exp(x, alpha, q);
    return D0 + D1 * s + D2 * s * s;
}

PekerisCoefficients pekeris_coefficients(HuaParameters const& p)
{
    if (p.q == 1.0) {
        throw DomainError("Pekeris system is singular at q = 1");
    }
    double q  = p.q;
    double a  = p.alpha();
    double w  = 1 - q;
    /* s and its first two derivatives at x = 0 */
    double s0 = 1 / w;
    double s1 = -a / (w * w);
    double s2 = a * a * (1 + q) / (w * w * w);

    /* f = D0 + D1 s + D2 s^2:  f' = (D1 + 2 D2 s) s',  f'' = (D1 + 2 D2 s) s'' + 2 D2 s'^2
       with f(0) = 1, f'(0) = -2, f''(0) = 6 */
    PekerisCoefficients c;
    double g = -2 / s1;  // D1 + 2 D2 s0
    c.D2 = (6 - g * s2) / (2 * s1 * s1);
    c.D1 = g - 2 * c.D2 * s0;
    c.D0 = 1 - c.D1 * s0 - c.D2 * s0 * s0;
    return c;
}

double pekeris_form(double r, HuaParameters const& p, PekerisCoefficients const& pek)
{
    return pek.reconstruct((r - p.r_e) / p.r_e, p.alpha(), p.q);
}

double u_of_x(double x, double alpha, double q)
{
    double den = one_minus_q_exp(x, alpha, q);
    if (!(den > 0)) {
        throw SingularityError("u(x) evaluated at or below the pole x0 = ln(q)/alpha");
    }
    return 1 / den;
}

double EffectiveCoefficients::veff(double x) const
{
    double u = u_of_x(x, alpha, q);
    return -V2 * u - V1 * u * u;
}

double EffectiveCoefficients::full(double x) const
{
    return veff(x) + const_shift;
}

EffectiveCoefficients effective_coefficients(HuaParameters const& p, int l, PekerisCoefficients const& pek)
{
    if (p.q == 0) {
        throw DomainError("effective form in u = 1/(1 - q e^{-alpha x}) requires q != 0");
    }
    double q  = p.q;
    double q2 = q * q;
    /* r_e^2 m V = W [((q - 1) u + 1)/q]^2,  r_e^2 A_l = C,  s = (u - 1)/q */
    double W = p.r_e * p.r_e * p.mass_factor * p.V0;
    double C = static_cast<double>(centrifugal_factor(p.D, l)) / 4;

    double quad = (W * (q - 1) * (q - 1) + C * pek.D2) / q2;
    double lin  = (2 * W * (q - 1) + C * (q * pek.D1 - 2 * pek.D2)) / q2;

    EffectiveCoefficients e;
    e.V1          = -quad;
    e.V2          = -lin;
    e.const_shift = W / q2 + C * (pek.D0 - pek.D1 / q + pek.D2 / q2);
    e.alpha       = p.alpha();
    e.q           = q;
    e.A_l         = centrifugal_strength(p, l);
    e.r_e         = p.r_e;
    return e;
}

} // namespace hua
