#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <utility>
#include <variant>

#include "ortho/errors.hpp"

namespace ortho {

using Complex = std::complex<double>;

/// Point of R u {inf}.
struct ExtReal {
    double v = 0.0;
    bool inf = false;

    ExtReal() = default;
    ExtReal(double x) : v(x) {}
    static ExtReal infinity() {
        ExtReal e;
        e.inf = true;
        return e;
    }
    bool is_inf() const { return inf; }
    bool operator==(const ExtReal& o) const { return inf == o.inf && (inf || v == o.v); }
};

/// Real 2x2 matrix of determinant 1 acting on the upper half-plane.
struct MoebiusMap {
    double a = 1, b = 0, c = 0, d = 1;

    MoebiusMap() = default;
    MoebiusMap(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    /// Rescales to determinant 1; throws GeometryError for det <= 0.
    MoebiusMap normalized() const;
    MoebiusMap inverse() const { return {d, -b, -c, a}; }
    MoebiusMap operator*(const MoebiusMap& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    Complex apply(Complex z) const;
    ExtReal apply(ExtReal x) const;
    /// Fixed points on the boundary (hyperbolic: repelling, attracting).
    std::pair<ExtReal, ExtReal> boundary_fixed_points() const;
    /// Interior fixed point of an elliptic map.
    Complex elliptic_fixed_point() const;
};

MoebiusMap translation(double t);
/// Hyperbolic translation of length t along [-1/0, inf) through i, i.e. z -> e^t z.
MoebiusMap dilation(double t);
/// Counterclockwise rotation about p by angle theta.
MoebiusMap rotation_about(Complex p, double theta);

/// Geodesic of H^2 between two boundary points.
struct GeodesicUHP {
    ExtReal p, q;

    GeodesicUHP(ExtReal p_, ExtReal q_);
    bool vertical() const { return p.is_inf() || q.is_inf(); }
    GeodesicUHP image(const MoebiusMap& m) const { return {m.apply(p), m.apply(q)}; }
};

/// Axis of a hyperbolic element.
GeodesicUHP axis_of(const MoebiusMap& m);

double hyperbolic_distance(Complex z, Complex w);

enum class EndKind { geodesic, cusp, cone };

constexpr int kInfiniteGrade = std::numeric_limits<int>::max();

/// Boundary element with grade; param is the length (geodesic) or angle (cone).
struct BoundaryEnd {
    EndKind kind = EndKind::cusp;
    double param = 0.0;
    int grade = 1;

    static BoundaryEnd geodesic(double length, int k = 1) { return {EndKind::geodesic, length, k}; }
    static BoundaryEnd cusp(int k = 1) { return {EndKind::cusp, 0.0, k}; }
    static BoundaryEnd cone(double theta, int k = 1) { return {EndKind::cone, theta, k}; }

    bool infinite_grade() const { return grade == kInfiniteGrade; }
    /// k * length or k * angle, the parameter of the pants boundary.
    double pants_param() const;
    /// Collars exist: cone angle k*theta <= pi.
    bool admissible() const;
};

struct HoroballSpec {
    double boundary_length;
};

std::variant<double, HoroballSpec> collar_radius(const BoundaryEnd& end);

struct AngleCot2 {
    double value;
    bool via_limit;
};

/// cot^2(phi/2) for geodesics [x,y], [c,d] crossing at q; phi is the angle at (x+y)/2
/// from the direction of y to q. An infinite c or d sets via_limit.
AngleCot2 intersection_angle_cot2(ExtReal x, ExtReal y, ExtReal c, ExtReal d);

/// k > 0 with 1/k - k = (2 - 2xy)/(x + y).
double harmonic_conjugate_k(double x, double y);

/// Two-cusp pants determined by l(gamma).
struct CuspPantsLengths {
    double ell_sigma_gamma;
    double m_bar;
    double ell_mu_bar;
};

CuspPantsLengths cusp_pants_lengths(double ell_gamma);
double gamma_length_from_trunc(double ell_mu_bar);
/// Inverse of gamma_length_from_trunc.
double trunc_from_gamma_length(double ell_gamma);

/// Pre-immersed pants. sigma_alpha/beta hold the seam length from gamma to a
/// geodesic end, the distance m to a cone point, or the truncated m_bar to a cusp collar.
struct PantsGeometry {
    BoundaryEnd end_a, end_b;
    double ell_gamma = 0.0;
    double sigma_alpha = 0.0, sigma_beta = 0.0, sigma_gamma = 0.0;
    double m_alpha = std::numeric_limits<double>::quiet_NaN();
    double m_beta = std::numeric_limits<double>::quiet_NaN();
    double m_bar_alpha = std::numeric_limits<double>::quiet_NaN();
    double m_bar_beta = std::numeric_limits<double>::quiet_NaN();
    /// Spine between the two ends (truncated at cusp collars); NaN if unknown.
    double ell_mu = std::numeric_limits<double>::quiet_NaN();
};

PantsGeometry pants_seams(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_gamma);
/// Pants spanned by a spine of length ell_mu (truncated at cusp ends).
PantsGeometry pants_from_spine(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu);
/// Limit pants when end_a is a geodesic of infinite grade.
PantsGeometry degenerate_pants_seams(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu);
/// Pants known only through its spine (degenerate gradings); seams are NaN.
PantsGeometry spine_only_pants(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu);

double distance_between_geodesics(const GeodesicUHP& g1, const GeodesicUHP& g2);

struct OutQ {
    bool applicable;   // phi <= pi/2
    bool certified;    // s >= s'/2
    double phi;
    double half_s_prime;
};

OutQ outq_evaluate(double delta, double s);
bool outq_predicate(double delta, double s);

std::pair<double, double> boundary_derivative_range(double ell);

/// |(M_z^{-1})'(w)| for the disk map M_z(w) = (z + w)/(1 + conj(z) w).
double disk_moebius_inverse_derivative(Complex z, Complex w);

} // namespace ortho
