#pragma once

/** \file hua_model.hpp
 *
 *  \brief Hua potential, its validity regime, the Pekeris replacement of the centrifugal
 *         term and the dimensionless effective potential in the variable u = 1/(1 - q e^{-alpha x}).
 *
 *  Conventions: x = (r - r_e)/r_e, alpha = b_h r_e, mass_factor = 2 mu / hbar^2.
 */

#include <optional>
#include <string>

namespace hua {

struct HuaParameters
{
    /// Depth of the well, i.e. the r -> infinity limit of V(r).
    double V0{1.0};
    /// Range parameter (inverse length).
    double b_h{1.0};
    /// Equilibrium radius.
    double r_e{1.0};
    /// Deformation parameter, -1 < q < 1.
    double q{0.5};
    /// 2 mu / hbar^2.
    double mass_factor{1.0};
    /// Spatial dimension.
    int D{3};

    double alpha() const
    {
        return b_h * r_e;
    }
};

struct QuantumNumbers
{
    int n_r{0};
    int l{0};
};

/// Throws DomainError unless V0, b_h, r_e, mass_factor > 0, D >= 2 and -1 < q < 1.
/// q == 1 is reported as the step-potential limit.
void check_physical(HuaParameters const& p);

void check_quantum_numbers(QuantumNumbers const& qn);

/// Lower end e^{-b_h r_e} of the interval on which the closed-form spectrum holds.
double validity_threshold(HuaParameters const& p);

struct ValidityReport
{
    double threshold{0};
    double q{0};
    bool valid{false};
    std::optional<double> singularity_radius;
    /// Empty on success, otherwise names the violated constraint.
    std::string message;
};

/// Checks e^{-b_h r_e} <= q < 1. Throws DomainError for q outside (-1, 1) or non-physical scales.
ValidityReport validate_parameters(HuaParameters const& p);

/// Pole r0 = r_e + ln(q)/b_h of the potential, or nullopt when q <= 0.
std::optional<double> singularity_radius(HuaParameters const& p);

/// 1 - q e^{-b_h (r - r_e)} evaluated without cancellation near the pole.
double pole_denominator(double r, HuaParameters const& p);

/// V(r) = V0 [(1 - e^{-b_h(r-r_e)}) / (1 - q e^{-b_h(r-r_e)})]^2.
double potential_value(double r, HuaParameters const& p);

/// (D + 2l - 1)(D + 2l - 3), exact in integers.
long long centrifugal_factor(int D, int l);

/// A_l = (D + 2l - 1)(D + 2l - 3) / (4 r_e^2).
double centrifugal_strength(HuaParameters const& p, int l);

struct PekerisCoefficients
{
    double D0{0};
    double D1{0};
    double D2{0};

    /// f(x) = D0 + D1 s + D2 s^2, s = e^{-alpha x}/(1 - q e^{-alpha x}); approximates (1 + x)^{-2}.
    double reconstruct(double x, double alpha, double q) const;
};

/// Matches f(x) to (1 + x)^{-2} through second order at x = 0.
PekerisCoefficients pekeris_coefficients(HuaParameters const& p);

/// Bracket D0 + D1 s + D2 s^2 of the Pekeris replacement as a function of r (replaces r_e^2 / r^2).
double pekeris_form(double r, HuaParameters const& p, PekerisCoefficients const& pek);

/// Dimensionless effective potential in u(x) = 1/(1 - q e^{-alpha x}):
///
///   r_e^2 [mass_factor V(r) + A_l (D0 + D1 s + D2 s^2)] = -V2 u - V1 u^2 + const_shift
///
/// V1, V2 carry the sign convention of the Riccati solution A^2 + alpha A = -V1,
/// 2AB - alpha A = -V2.
struct EffectiveCoefficients
{
    double V1{0};
    double V2{0};
    double const_shift{0};
    double alpha{0};
    double q{0};
    /// Centrifugal strength (D + 2l - 1)(D + 2l - 3) / (4 r_e^2).
    double A_l{0};
    double r_e{1};

    /// x-dependent part -V2 u - V1 u^2 (the V_eff of the Riccati equation).
    double veff(double x) const;

    /// veff(x) + const_shift.
    double full(double x) const;
};

/// Requires q != 0.
EffectiveCoefficients effective_coefficients(HuaParameters const& p, int l, PekerisCoefficients const& pek);

/// u(x) = 1/(1 - q e^{-alpha x}). Throws SingularityError at or below the pole.
double u_of_x(double x, double alpha, double q);

/// 1 - q e^{-alpha x}, accurate near the pole x0 = ln(q)/alpha.
double one_minus_q_exp(double x, double alpha, double q);

} // namespace hua
