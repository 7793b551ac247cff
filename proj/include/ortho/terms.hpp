#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ortho/hgeom.hpp"

namespace ortho {

struct TermPart {
    std::string label;
    double value;
    int multiplicity;
};

/// h(P) with its breakdown; value = sum of multiplicity * value over parts.
struct TermValue {
    double value = 0.0;
    std::vector<TermPart> parts;
};

double br_term(double ell_sigma);

/// Lasso around a geodesic boundary of length boundary_length, foot at seam length ell_sigma.
double lasso_geodesic(double boundary_length, double ell_sigma);
double lasso_cusp(double m_bar);

/// (a, b) of the cone-point lasso domain; a <= 0 is rejected.
std::pair<double, double> cone_ab(double m, double theta);
double lasso_cone(double m, double theta);
/// I(a,b) = 2 Re{L(z) - L(1/z)}.
double lasso_cone_closed(double a, double b);
/// I(a,b) from the eight Li2 terms.
double lasso_cone_eight_terms(double a, double b);

double f_delta(double delta, double r1, double r2);

TermValue h_of_pants(const PantsGeometry& pg);

double phi(double L);
double phi_decomposed(double L);
double phi_lower_bound(double L);
double unit_tangent_volume(double euler_char_abs);

/// Per-prime summands of the cusped identity in m_bar, l(gamma), l(mu_bar).
double graded_summand_mbar(double m_bar);
double graded_summand_gamma(double ell_gamma);
double graded_summand_trunc(double ell_mu_bar);
/// 4pi^2 - 8L(1/cosh^2(sigma_gamma/2)) - 32L(1/(1+e^m_bar)).
double simple_identity_summand(double ell_sigma_gamma, double m_bar);

} // namespace ortho
