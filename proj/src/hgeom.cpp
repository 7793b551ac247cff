#include "ortho/hgeom.hpp"

#include <cmath>
#include <numbers>

namespace ortho {

namespace {

constexpr double kDegenerate = 1e-12;

struct Trig {
    EndKind kind;
    double c, s;
    double half;   // p/2
    double cms;    // c - s without cancellation
};

Trig trig_of(const BoundaryEnd& e) {
    double h = e.pants_param() / 2;
    switch (e.kind) {
    case EndKind::geodesic: return {e.kind, std::cosh(h), std::sinh(h), h, std::exp(-h)};
    case EndKind::cone:
        return {e.kind, std::cos(h), std::sin(h), h, std::numbers::sqrt2 * std::cos(h + std::numbers::pi / 4)};
    case EndKind::cusp: break;
    }
    return {EndKind::cusp, 1.0, 0.0, 0.0, 1.0};
}

void require_finite_end(const BoundaryEnd& e, const char* who) {
    if (!e.admissible()) throw GeometryError(std::string(who) + ": inadmissible boundary end");
    if (e.infinite_grade()) throw GeometryError(std::string(who) + ": infinite grade needs the degenerate form");
}

double acosh1p(double w) { return std::log1p(w + std::sqrt(w * (w + 2.0))); }

// Seam from gamma (half length g) to end x, the other end being y.
double seam_to(const Trig& x, const Trig& y, double g) {
    double cg = std::cosh(g), sg = std::sinh(g);
    switch (x.kind) {
    case EndKind::geodesic: {
        // cosh sigma - 1 = (c_y + cosh(g - x)) / (sg s_x)
        double w = (y.c + std::cosh(g - x.half)) / (sg * x.s);
        if (!(w > 0.0)) throw GeometryError("pants_seams: non-realizable triple");
        return acosh1p(w);
    }
    case EndKind::cone: {
        double v = (y.c + cg * x.c) / (sg * x.s);
        if (!(v > 0.0)) throw GeometryError("pants_seams: non-realizable triple");
        return std::asinh(v);
    }
    case EndKind::cusp: break;
    }
    return std::log1p((std::exp(-g) + y.c) / sg);
}

double spine_length(const Trig& a, const Trig& b, double g) {
    double cg = std::cosh(g);
    bool ca = a.kind == EndKind::cusp, cb = b.kind == EndKind::cusp;
    if (ca && cb) return std::log1p(std::pow(std::sinh(g / 2), 2));
    if (ca) return std::log1p((cg + b.cms) / b.s);
    if (cb) return std::log1p((cg + a.cms) / a.s);
    if (a.kind == b.kind) {
        double ccss = a.kind == EndKind::geodesic ? std::cosh(a.half - b.half) : std::cos(a.half + b.half);
        return acosh1p((cg + ccss) / (a.s * b.s));
    }
    return std::asinh((cg + a.c * b.c) / (a.s * b.s));
}

void store_seam(PantsGeometry& pg, bool alpha, EndKind kind, double v) {
    (alpha ? pg.sigma_alpha : pg.sigma_beta) = v;
    if (kind == EndKind::cone) (alpha ? pg.m_alpha : pg.m_beta) = v;
    if (kind == EndKind::cusp) (alpha ? pg.m_bar_alpha : pg.m_bar_beta) = v;
}

// Factor (x - y) with infinite points contributing only their sign.
double diff_sign(const ExtReal& x, const ExtReal& y) {
    if (x.is_inf()) return 1.0;
    if (y.is_inf()) return -1.0;
    return x.v - y.v;
}

} // namespace

MoebiusMap MoebiusMap::normalized() const {
    double dt = det();
    if (!(dt > 0.0)) throw GeometryError("MoebiusMap: determinant not positive");
    double s = 1.0 / std::sqrt(dt);
    return {a * s, b * s, c * s, d * s};
}

Complex MoebiusMap::apply(Complex z) const { return (a * z + b) / (c * z + d); }

ExtReal MoebiusMap::apply(ExtReal x) const {
    if (x.is_inf()) {
        if (c == 0.0) return ExtReal::infinity();
        return a / c;
    }
    double den = c * x.v + d;
    if (den == 0.0) return ExtReal::infinity();
    return (a * x.v + b) / den;
}

std::pair<ExtReal, ExtReal> MoebiusMap::boundary_fixed_points() const {
    double tr = trace();
    double disc = tr * tr - 4.0 * det();
    if (disc < 0.0) throw GeometryError("boundary_fixed_points: elliptic element");
    double sq = std::sqrt(disc);
    if (c == 0.0) {
        if (a == d) return {ExtReal::infinity(), ExtReal::infinity()};
        // z -> (a z + b)/d: fixed at inf and b/(d - a)
        ExtReal fin = b / (d - a);
        if (std::abs(a) > std::abs(d)) return {fin, ExtReal::infinity()};
        return {ExtReal::infinity(), fin};
    }
    // c z^2 + (d - a) z - b = 0; derivative 1/(c z + d)^2, so the repelling point has |c z + d| < 1
    double z1 = (a - d + sq) / (2.0 * c);
    double z2 = (a - d - sq) / (2.0 * c);
    if (std::abs(c * z1 + d) < std::abs(c * z2 + d)) return {z1, z2};
    return {z2, z1};
}

Complex MoebiusMap::elliptic_fixed_point() const {
    double tr = trace();
    double disc = tr * tr - 4.0 * det();
    if (disc >= 0.0 || c == 0.0) throw GeometryError("elliptic_fixed_point: not elliptic");
    Complex z{(a - d) / (2.0 * c), std::sqrt(-disc) / (2.0 * std::abs(c))};
    return z;
}

MoebiusMap translation(double t) { return {1.0, t, 0.0, 1.0}; }

MoebiusMap dilation(double t) { return {std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2)}; }

MoebiusMap rotation_about(Complex p, double theta) {
    double h = theta / 2;
    MoebiusMap r{std::cos(h), std::sin(h), -std::sin(h), std::cos(h)};
    double y = p.imag();
    MoebiusMap to{std::sqrt(y), p.real() / std::sqrt(y), 0.0, 1.0 / std::sqrt(y)};
    return to * r * to.inverse();
}

GeodesicUHP::GeodesicUHP(ExtReal p_, ExtReal q_) : p(p_), q(q_) {
    if (p == q) throw GeometryError("GeodesicUHP: coincident endpoints");
    if (!p.is_inf() && !q.is_inf() && q.v < p.v) std::swap(p, q);
}

GeodesicUHP axis_of(const MoebiusMap& m) {
    auto [r, a] = m.boundary_fixed_points();
    if (r == a) throw GeometryError("axis_of: parabolic element");
    return {r, a};
}

double hyperbolic_distance(Complex z, Complex w) {
    double num = std::norm(z - w);
    double den = 2.0 * z.imag() * w.imag();
    double u = num / den;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

double BoundaryEnd::pants_param() const {
    if (kind == EndKind::cusp) return 0.0;
    if (infinite_grade()) return std::numeric_limits<double>::infinity();
    return grade * param;
}

bool BoundaryEnd::admissible() const {
    if (grade < 1) return false;
    switch (kind) {
    case EndKind::geodesic: return param > kDegenerate && std::isfinite(param);
    case EndKind::cone:
        if (infinite_grade()) return false;
        return param > kDegenerate && grade * param <= std::numbers::pi * (1 + 1e-15);
    case EndKind::cusp: return true;
    }
    return false;
}

std::variant<double, HoroballSpec> collar_radius(const BoundaryEnd& end) {
    if (end.grade < 1) throw DomainError("collar_radius: grade must be positive");
    switch (end.kind) {
    case EndKind::geodesic:
        if (!end.admissible()) throw DomainError("collar_radius: degenerate length");
        if (end.infinite_grade()) return 0.0;
        return std::asinh(1.0 / std::sinh(end.pants_param() / 2));
    case EndKind::cone: {
        if (!end.admissible()) throw DomainError("collar_radius: cone angle exceeds pi/k");
        double s = std::sin(end.pants_param() / 2);
        if (s >= 1.0) return 0.0;
        return std::acosh(1.0 / s);
    }
    case EndKind::cusp: break;
    }
    if (end.infinite_grade()) return HoroballSpec{0.0};
    return HoroballSpec{2.0 / end.grade};
}

AngleCot2 intersection_angle_cot2(ExtReal x, ExtReal y, ExtReal c, ExtReal d) {
    if (x.is_inf() || y.is_inf())
        throw DomainError("intersection_angle_cot2: [x,y] must have finite endpoints");
    if (x == y || c == d) throw GeometryError("intersection_angle_cot2: degenerate geodesic");
    if (x == c || x == d || y == c || y == d)
        throw GeometryError("intersection_angle_cot2: shared endpoint");
    double lo = std::min(x.v, y.v), hi = std::max(x.v, y.v);
    auto inside = [&](const ExtReal& t) { return !t.is_inf() && lo < t.v && t.v < hi; };
    if (inside(c) == inside(d)) throw GeometryError("intersection_angle_cot2: geodesics do not cross");
    bool lim = c.is_inf() || d.is_inf();
    double num = 1.0, den = 1.0;
    if (!c.is_inf()) {
        num *= x.v - c.v;
        den *= y.v - c.v;
    }
    if (!d.is_inf()) {
        num *= x.v - d.v;
        den *= y.v - d.v;
    }
    return {std::abs(num / den), lim};
}

double harmonic_conjugate_k(double x, double y) {
    double s = x + y;
    if (s == 0.0) throw DomainError("harmonic_conjugate_k: x + y = 0 (k = 1 by continuity)");
    double r = (2.0 - 2.0 * x * y) / s;
    // k^2 + r k - 1 = 0, positive root without cancellation
    double q = std::sqrt(r * r + 4.0);
    return r >= 0 ? 2.0 / (r + q) : (q - r) / 2.0;
}

CuspPantsLengths cusp_pants_lengths(double ell_gamma) {
    if (!(ell_gamma > 0.0)) throw DomainError("cusp_pants_lengths: length must be positive");
    double sh = 1.0 / std::sinh(ell_gamma / 4);
    double sigma = 2.0 * std::asinh(sh);
    double mbar = 0.5 * std::log1p(sh * sh);
    double mu = -std::log(-std::expm1(-2.0 * mbar));
    return {sigma, mbar, mu};
}

double gamma_length_from_trunc(double ell_mu_bar) {
    if (!(ell_mu_bar > 0.0)) throw DomainError("gamma_length_from_trunc: length must be positive");
    return 4.0 * std::asinh(std::sqrt(std::expm1(ell_mu_bar)));
}

double trunc_from_gamma_length(double ell_gamma) {
    if (!(ell_gamma > 0.0)) throw DomainError("trunc_from_gamma_length: length must be positive");
    double s = std::sinh(ell_gamma / 4);
    return std::log1p(s * s);
}

PantsGeometry pants_seams(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_gamma) {
    require_finite_end(end_a, "pants_seams");
    require_finite_end(end_b, "pants_seams");
    if (!(ell_gamma > kDegenerate) || !std::isfinite(ell_gamma))
        throw GeometryError("pants_seams: degenerate gamma length");
    Trig a = trig_of(end_a), b = trig_of(end_b);
    double g = ell_gamma / 2;
    double cg = std::cosh(g), sg = std::sinh(g);

    PantsGeometry pg;
    pg.end_a = end_a;
    pg.end_b = end_b;
    pg.ell_gamma = ell_gamma;
    store_seam(pg, true, a.kind, seam_to(a, b, g));
    store_seam(pg, false, b.kind, seam_to(b, a, g));
    double q = (a.c * a.c + b.c * b.c + 2.0 * a.c * b.c * cg) / (sg * sg);
    pg.sigma_gamma = 2.0 * std::asinh(std::sqrt(q));
    pg.ell_mu = spine_length(a, b, g);
    return pg;
}

PantsGeometry pants_from_spine(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu) {
    require_finite_end(end_a, "pants_from_spine");
    require_finite_end(end_b, "pants_from_spine");
    if (!(ell_mu > 0.0)) throw GeometryError("pants_from_spine: spine length must be positive");
    Trig a = trig_of(end_a), b = trig_of(end_b);
    bool ca = a.kind == EndKind::cusp, cb = b.kind == EndKind::cusp;
    double cg;
    if (ca && cb) {
        cg = 2.0 * std::exp(ell_mu) - 1.0;
    } else if (ca) {
        cg = std::exp(ell_mu) * b.s - b.c;
    } else if (cb) {
        cg = std::exp(ell_mu) * a.s - a.c;
    } else {
        double dm = a.kind == b.kind ? std::cosh(ell_mu) : std::sinh(ell_mu);
        cg = a.s * b.s * dm - a.c * b.c;
    }
    if (!(cg > 1.0)) throw GeometryError("pants_from_spine: spine too short for these ends");
    PantsGeometry pg;
    if (ca && cb) {
        // exact in ell_mu: cosh(G/2) - 1 = 2 expm1(ell_mu)
        pg = pants_seams(end_a, end_b, 4.0 * std::asinh(std::sqrt(std::expm1(ell_mu))));
    } else {
        pg = pants_seams(end_a, end_b, 2.0 * std::acosh(cg));
    }
    pg.ell_mu = ell_mu;
    return pg;
}

PantsGeometry degenerate_pants_seams(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu) {
    if (end_a.kind != EndKind::geodesic || !end_a.infinite_grade())
        throw GeometryError("degenerate_pants_seams: end_a must be a geodesic of infinite grade");
    require_finite_end(end_b, "degenerate_pants_seams");
    if (!(ell_mu > 0.0)) throw GeometryError("degenerate_pants_seams: spine length must be positive");
    Trig b = trig_of(end_b);
    double K;
    switch (b.kind) {
    case EndKind::geodesic: K = b.s * std::cosh(ell_mu) - b.c; break;
    case EndKind::cone: K = b.s * std::sinh(ell_mu) - b.c; break;
    default: K = std::expm1(ell_mu); break;
    }
    if (!(K > 0.0)) throw GeometryError("degenerate_pants_seams: spine inside the collar");
    PantsGeometry pg;
    pg.end_a = end_a;
    pg.end_b = end_b;
    pg.ell_gamma = std::numeric_limits<double>::infinity();
    pg.sigma_alpha = std::numeric_limits<double>::quiet_NaN();
    double v = (1.0 + K * b.c) / (K * b.s);
    double sb;
    switch (b.kind) {
    case EndKind::geodesic: sb = std::acosh(v); break;
    case EndKind::cone: sb = std::asinh(v); break;
    default: sb = std::log1p(1.0 / K); break;
    }
    store_seam(pg, false, b.kind, sb);
    pg.sigma_gamma = 2.0 * std::asinh(std::sqrt(1.0 + 2.0 * b.c * K) / K);
    pg.ell_mu = ell_mu;
    return pg;
}

PantsGeometry spine_only_pants(const BoundaryEnd& end_a, const BoundaryEnd& end_b, double ell_mu) {
    if (!(ell_mu > 0.0)) throw GeometryError("spine_only_pants: spine length must be positive");
    PantsGeometry pg;
    pg.end_a = end_a;
    pg.end_b = end_b;
    pg.ell_gamma = std::numeric_limits<double>::infinity();
    pg.sigma_alpha = pg.sigma_beta = pg.sigma_gamma = std::numeric_limits<double>::quiet_NaN();
    pg.ell_mu = ell_mu;
    return pg;
}

double distance_between_geodesics(const GeodesicUHP& g1, const GeodesicUHP& g2) {
    const ExtReal &a = g1.p, &b = g1.q, &c = g2.p, &d = g2.q;
    if (a == c || a == d || b == c || b == d)
        throw GeometryError("distance_between_geodesics: shared endpoint");
    double den = diff_sign(a, d) * diff_sign(b, c);
    double chi = diff_sign(a, c) * diff_sign(b, d) / den;
    double omc = diff_sign(a, b) * diff_sign(d, c) / den;
    if (!(chi > 0.0)) throw GeometryError("distance_between_geodesics: geodesics intersect");
    if (chi > 1.0) {
        omc = -omc / chi;
        chi = 1.0 / chi;
    }
    return 2.0 * std::log1p(std::sqrt(chi)) - std::log(omc);
}

OutQ outq_evaluate(double delta, double s) {
    if (!(delta > 0.0) || !(s >= 0.0)) throw DomainError("outq_evaluate: need delta > 0, s >= 0");
    double t = std::sinh(s) * std::tanh(delta);
    double phi = 2.0 * std::atan2(1.0, t);
    double half = std::asinh(1.0 / std::sinh(delta));
    bool applicable = t >= 1.0;
    return {applicable, applicable && s >= half * (1 - 1e-15), phi, half};
}

bool outq_predicate(double delta, double s) { return outq_evaluate(delta, s).certified; }

std::pair<double, double> boundary_derivative_range(double ell) {
    if (!(ell >= 0.0)) throw DomainError("boundary_derivative_range: length must be nonnegative");
    return {std::exp(-ell), std::exp(ell)};
}

double disk_moebius_inverse_derivative(Complex z, Complex w) {
    return (1.0 - std::norm(z)) / std::norm(1.0 - std::conj(z) * w);
}

} // namespace ortho
