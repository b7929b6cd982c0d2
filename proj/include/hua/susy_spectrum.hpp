#pragma once

/** \file susy_spectrum.hpp
 *
 *  \brief Superpotential phi(x) = A u(x) + B, shape-invariance ladder a_k = a_0 - k alpha and
 *         the closed-form bound-state energies of the Hua potential.
 */

#include <string_view>

#include "hua/hua_model.hpp"

namespace hua {

struct SusyState
{
    double alpha{0};
    double q{0};
    double A{0};
    double B{0};
    double a0{0};
    double V1{0};
    double V2{0};
    /// Shifted ground-state energy -B^2.
    double gs_energy_shifted{0};
    /// A + B > 0, i.e. R_0 decays as x -> infinity.
    bool admissible{false};

    /// Image x0 = ln(q)/alpha of the pole, or -infinity when q <= 0.
    double x0() const;
};

/// A = -(alpha/2)(1 + sqrt(1 - 4 V1/alpha^2)), B = -(A + (V1 + V2)/A)/2.
/// Throws NoRealSolutionError for a negative radicand.
SusyState superpotential_params(EffectiveCoefficients const& eff);

/// phi(x) = A/(1 - q e^{-alpha x}) + B.
double superpotential_value(double x, SusyState const& s);

/// phi'(x) = A alpha (u - u^2), analytic.
double superpotential_derivative(double x, SusyState const& s);

/// Unnormalized R_0(x) = e^{-(A+B)x} (1 - q e^{-alpha x})^{-A/alpha}.
double ground_state_wavefunction(double x, SusyState const& s);

/// Constant N with  integral (N R_0)^2 dr = 1  over (x0, x_max], r = r_e (1 + x), by the
/// trapezoid rule on n_samples equidistant points in r. The interval starts at r = 0 instead
/// when the pole lies at negative r.
double ground_state_normalization(SusyState const& s, double r_e, double x_max, int n_samples);

struct PartnerPotentials
{
    /// phi^2 - phi'
    double minus{0};
    /// phi^2 + phi'
    double plus{0};
};

/// Partner pair built from phi_a = a u + b(a), b(a) = -(a + S/a)/2, S = V1 + V2.
PartnerPotentials partner_potentials(double x, double a, double S, double alpha, double q);

/// R(a_next) = ((a_prev + S/a_prev)^2 - (a_next + S/a_next)^2)/4, S = V1 + V2.
double shape_invariance_remainder(double a_prev, double a_next, double V1, double V2);

/// a_k = a_0 - k alpha.
double ladder_value(SusyState const& s, int k);

/// Shifted eigenvalue -(a + S/a)^2/4 with a = a_0 - n_r alpha.
double shifted_eigenvalue(int n_r, SusyState const& s);

enum class Method
{
    closed_form,
    numeric_pekeris,
    numeric_exact
};

std::string_view to_string(Method m);

struct SpectrumLevel
{
    int n_r{0};
    int l{0};
    double N_r{0};
    double lambda_l{0};
    double delta_l{0};
    double energy{0};
    Method method{Method::closed_form};
    /// N_r^2 == lambda_l: level sits exactly at the continuum threshold.
    bool marginal{false};
    /// Parameters satisfied the validity gate.
    bool valid{true};
};

enum class Gate
{
    strict,
    force
};

/// delta_l = sqrt(1/4 + m V0/b_h^2 (1 - 1/q)^2 + (D+2l-1)(D+2l-3)/(4 b_h^2 r_e^2) D2/q^2).
double delta_l(HuaParameters const& p, int l, PekerisCoefficients const& pek);

/// lambda_l = m V0/b_h^2 (1/q^2 - 1) + (D+2l-1)(D+2l-3)/(4 b_h^2 r_e^2) (D2/q^2 - D1/q).
double lambda_l(HuaParameters const& p, int l, PekerisCoefficients const& pek);

/// Closed-form energy E_{n_r,l}. Strict gating throws ValidityError outside e^{-b_h r_e} <= q < 1;
/// Gate::force evaluates anyway and marks the level invalid. Throws UnboundLevelError for N_r^2 > lambda_l.
SpectrumLevel energy_level(QuantumNumbers const& qn, HuaParameters const& p, PekerisCoefficients const& pek,
                           Gate gate = Gate::strict);

/// Same energy through the SUSY ladder: (shifted_eigenvalue + const_shift) / (r_e^2 m).
double energy_via_ladder(QuantumNumbers const& qn, HuaParameters const& p, PekerisCoefficients const& pek);

/// Continuum threshold of the Pekeris-approximated equation, V0 + A_l D0 / m.
double pekeris_continuum(HuaParameters const& p, int l, PekerisCoefficients const& pek);

/// Number of n_r >= 0 with (n_r + delta_l + 1/2)^2 <= lambda_l.
int count_bound_states(int l, HuaParameters const& p, PekerisCoefficients const& pek);

} // namespace hua
