#include "ortho/terms.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ortho/dilog.hpp"

namespace ortho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

double L(double x) { return rogers_L_real(x); }

double Lc_re_diff(ComplexValue z) { return 2.0 * (rogers_L(z) - rogers_L(1.0 / z)).real(); }

double Phi_delta(double delta, double r) {
    if (r == 0.0) return 0.0;
    double q = std::log(std::abs(std::sin(r + delta)) / std::abs(std::sin(delta)));
    return q * std::log(std::sin(r)) - 0.5 * q * q;
}

void check_cone_angle(double theta) {
    if (!(theta > 0.0) || theta > kPi / 2 * (1 + 1e-15))
        throw DomainError("cone lasso: angle must lie in (0, pi/2]");
}

double lasso_for(const BoundaryEnd& e, double sigma) {
    switch (e.kind) {
    case EndKind::geodesic: return lasso_geodesic(e.pants_param(), sigma);
    case EndKind::cusp: return lasso_cusp(sigma);
    case EndKind::cone: {
        double th = e.pants_param();
        check_cone_angle(th);
        auto [a, b] = cone_ab(sigma, th);
        if (b >= 1.0) throw DomainError("h_of_pants: cone lasso domain has b >= 1");
        return lasso_cone(sigma, th);
    }
    }
    return 0.0;
}

double br_for(const BoundaryEnd& e, double sigma) {
    return e.kind == EndKind::geodesic ? br_term(sigma) : 0.0;
}

TermValue assemble(std::vector<TermPart> parts) {
    TermValue tv;
    tv.parts = std::move(parts);
    for (const auto& p : tv.parts) tv.value += p.multiplicity * p.value;
    return tv;
}

} // namespace

double br_term(double ell_sigma) {
    if (!(ell_sigma > 0.0)) throw DomainError("br_term: length must be positive");
    double c = std::cosh(ell_sigma / 2);
    return 8.0 * L(1.0 / (c * c));
}

double lasso_geodesic(double boundary_length, double ell_sigma) {
    if (!(boundary_length > 0.0) || !(ell_sigma > 0.0))
        throw DomainError("lasso_geodesic: lengths must be positive");
    double t = std::tanh(ell_sigma / 2);
    double y = t * t;
    double c = std::cosh(ell_sigma / 2);
    double omy = 1.0 / (c * c);
    double omx = -std::expm1(-boundary_length);
    double omxy = omy + y * omx; // 1 - xy
    return 2.0 * (L(y) - L(omx / omxy) + L(omy / omxy));
}

double lasso_cusp(double m_bar) {
    if (!(m_bar >= 0.0)) throw DomainError("lasso_cusp: m_bar must be nonnegative");
    return 4.0 * L(1.0 / (1.0 + std::exp(m_bar)));
}

std::pair<double, double> cone_ab(double m, double theta) {
    if (!(m > 0.0)) throw DomainError("cone_ab: m must be positive");
    check_cone_angle(theta);
    double ch = std::cosh(m), sh = std::sinh(m);
    double den = sh + ch * std::sin(theta / 2);
    double cc = ch * std::cos(theta / 2);
    if (!(cc > 1.0)) throw DomainError("cone_ab: a <= 0 (cosh m cos(theta/2) <= 1)");
    return {(cc - 1.0) / den, (cc + 1.0) / den};
}

double lasso_cone(double m, double theta) {
    cone_ab(m, theta);
    double sh = std::sinh(m);
    ComplexValue z = ComplexValue(sh + std::tan(theta / 2), 0.0) / ComplexValue(sh, 1.0);
    return Lc_re_diff(z);
}

double lasso_cone_closed(double a, double b) {
    if (!(0.0 < a && a < b)) throw DomainError("lasso_cone_closed: need 0 < a < b");
    ComplexValue z = ComplexValue((1 - a * b) / (a + b), 1.0) / ComplexValue((1 - b * b) / (2 * b), 1.0);
    return Lc_re_diff(z);
}

double lasso_cone_eight_terms(double a, double b) {
    if (!(0.0 < a && a < b)) throw DomainError("lasso_cone_eight_terms: need 0 < a < b");
    ComplexValue sum = 0.0;
    for (double eps : {1.0, -1.0}) {
        ComplexValue z = ComplexValue((1 - a * b) / (a + b), eps) / ComplexValue((1 - b * b) / (2 * b), eps);
        sum += dilog(1.0 - 1.0 / z) - dilog(1.0 - z) - dilog(1.0 / z) + dilog(z);
    }
    return 0.5 * sum.real();
}

double f_delta(double delta, double r1, double r2) {
    if (!(0.0 <= r1 && r1 < r2 && r2 <= kPi / 2 * (1 + 1e-15)))
        throw DomainError("f_delta: need 0 <= r1 < r2 <= pi/2");
    if (!(std::abs(delta) < kPi / 2)) throw DomainError("f_delta: delta outside (-pi/2, pi/2)");
    if (r1 <= -delta && -delta <= r2) throw DomainError("f_delta: -delta lies in [r1, r2]");
    if (delta == 0.0) {
        double l1 = std::log(std::sin(r1)), l2 = std::log(std::sin(r2));
        return 0.5 * (l2 * l2 - l1 * l1);
    }
    double u = 1.0 / std::tan(delta);
    ComplexValue li = 0.0;
    for (double eps : {1.0, -1.0}) {
        ComplexValue den(u, eps);
        double v2 = 1.0 / std::tan(r2 + delta), v1 = 1.0 / std::tan(r1 + delta);
        ComplexValue w2 = r2 == 0.0 ? 0.0 : (u - v2) / den;
        ComplexValue w1 = r1 == 0.0 ? 0.0 : (u - v1) / den;
        li += dilog(w2) - dilog(w1);
    }
    return -0.5 * li.real() + Phi_delta(delta, r2) - Phi_delta(delta, r1);
}

TermValue h_of_pants(const PantsGeometry& pg) {
    const BoundaryEnd &a = pg.end_a, &b = pg.end_b;
    for (const auto* e : {&a, &b})
        if (e->kind == EndKind::cone && (e->infinite_grade() || e->grade * e->param > kPi / 2 * (1 + 1e-15)))
            throw DomainError("h_of_pants: cone bound k*theta <= pi/2 violated");
    bool ia = a.infinite_grade(), ib = b.infinite_grade();
    if ((ia && a.kind == EndKind::cusp) || (ib && b.kind == EndKind::cusp))
        return assemble({{"degenerate cusp", 0.0, 1}});
    if (ia && ib) return assemble({{"Bridgeman", br_term(pg.ell_mu), 1}});

    std::vector<TermPart> parts{{"4pi^2", 4 * kPi2, 1}};
    if (!ia) {
        parts.push_back({"Br(gamma,alpha)", br_for(a, pg.sigma_alpha), -1});
        parts.push_back({"La(gamma,alpha)", lasso_for(a, pg.sigma_alpha), -4});
    }
    if (!ib) {
        parts.push_back({"Br(gamma,beta)", br_for(b, pg.sigma_beta), -1});
        parts.push_back({"La(gamma,beta)", lasso_for(b, pg.sigma_beta), -4});
    }
    parts.push_back({"Br(gamma,gamma)", br_term(pg.sigma_gamma), -1});
    return assemble(std::move(parts));
}

double phi(double L_) {
    if (!(L_ > 0.0)) throw DomainError("phi: L must be positive");
    // Abel and reflection: Phi = 2L(1-a) - L(e^-L)/2, free of cancellation for large L
    double e = std::exp(-L_);
    double a = std::sqrt(-std::expm1(-L_));
    return 2.0 * L(e / (1.0 + a)) - 0.5 * L(e);
}

double phi_decomposed(double L_) {
    if (!(L_ > 0.0)) throw DomainError("phi_decomposed: L must be positive");
    double a = std::sqrt(-std::expm1(-L_));
    double first = 0.25 * -std::log(-std::expm1(-L_)) * (2.0 * std::log1p(a) + L_);
    boost::math::quadrature::tanh_sinh<double> ts;
    double w = 1.0 - a;
    auto f = [](double t, double tc) {
        // tc > 0 is the distance to the right endpoint
        double omt = tc > 0 ? tc : 1.0 - t;
        if (omt <= 0) return 0.5;
        return -std::log1p(-omt) / (omt * (1.0 + t));
    };
    double integral = w > 0 ? ts.integrate(f, a, 1.0, 1e-15) : 0.0;
    return first + 2.0 * integral;
}

double phi_lower_bound(double L_) {
    if (!(L_ > 0.0)) throw DomainError("phi_lower_bound: L must be positive");
    return (L_ + 2.0) * std::exp(-L_) / 4.0;
}

double unit_tangent_volume(double euler_char_abs) {
    if (!(euler_char_abs >= 0.0)) throw DomainError("unit_tangent_volume: need |chi| >= 0");
    return 4.0 * kPi2 * euler_char_abs;
}

double graded_summand_mbar(double m_bar) {
    if (!(m_bar >= 0.0)) throw DomainError("graded_summand_mbar: m_bar must be nonnegative");
    return kPi2 / 4 - L(std::exp(-m_bar)) - L(1.0 / (1.0 + std::exp(m_bar)));
}

double graded_summand_gamma(double ell_gamma) {
    if (!(ell_gamma > 0.0)) throw DomainError("graded_summand_gamma: length must be positive");
    double e = std::exp(-ell_gamma / 2);
    return kPi2 / 4 - L(std::tanh(ell_gamma / 4)) - L(0.5 - 0.5 * e);
}

double graded_summand_trunc(double ell_mu_bar) {
    if (!(ell_mu_bar > 0.0)) throw DomainError("graded_summand_trunc: length must be positive");
    double a = std::sqrt(-std::expm1(-ell_mu_bar));
    return kPi2 / 4 - L(a) - L(a / (1.0 + a));
}

double simple_identity_summand(double ell_sigma_gamma, double m_bar) {
    double c = std::cosh(ell_sigma_gamma / 2);
    return 4 * kPi2 - 8.0 * L(1.0 / (c * c)) - 32.0 * L(1.0 / (1.0 + std::exp(m_bar)));
}

} // namespace ortho
