#include "ortho/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ortho/hgeom.hpp"

namespace ortho {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kRoundingFloor = 256 * kEps;

using boost::math::quadrature::tanh_sinh;


struct Budget {
    std::size_t used = 0;
    std::size_t max;
    void tick() {
        if (++used > max) throw BudgetExceeded("quadrature: evaluation budget exhausted");
    }
};

/// Collects inner-panel error as a fraction of the inner L1 norm.
struct InnerError {
    double worst_rel = 0.0;
    void add(double err, double l1) {
        if (l1 > 0) worst_rel = std::max(worst_rel, err / l1);
    }
};

QuadratureResult finish(double value, double outer_err, double l1, const InnerError& inner,
                        const Budget& budget, double tol, const char* what) {
    QuadratureResult r;
    r.value = value;
    r.error_estimate = outer_err + (inner.worst_rel + kRoundingFloor) * l1;
    r.evaluations = budget.used;
    if (!(r.error_estimate <= tol * l1) && l1 > 0)
        throw BudgetExceeded(std::string(what) + ": tolerance not reached");
    return r;
}

/// Tanh-sinh on [a, b] through the unit interval, so that rounding floors scale with b - a.
/// g(x, x - a, b - x) receives both endpoint distances without cancellation.
/// Boost may stop early on a stalled error sequence; re-request tighter until tol is met.
template <class G>
double ts_integrate(tanh_sinh<double>& rule, G g, double a, double b, double tol, double& err, double& l1) {
    double len = b - a;
    auto f = [&](double v, double vc) {
        double vl = vc < 0 ? -vc : v;
        double vr = vc > 0 ? vc : 1.0 - v;
        if (vl <= 0 || vr <= 0) return 0.0;
        double x = vl <= 0.5 ? a + len * vl : b - len * vr;
        return g(x, len * vl, len * vr);
    };
    double v = 0;
    for (double req = tol; req >= 1e-22; req *= 1e-2) {
        v = rule.integrate(f, 0.0, 1.0, req, &err, &l1);
        if (err <= tol * l1) break;
    }
    err *= len;
    l1 *= len;
    return v * len;
}

} // namespace

QuadratureResult lasso_cusp_integral(double a, const QuadratureOptions& opt) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("lasso_cusp_integral: need 0 < a <= 1");
    Budget budget{0, opt.max_evaluations};
    InnerError inner;
    const double two_a = 2 * a;
    const double inner_tol = std::max(opt.tolerance * 1e-3, 1e-15);

    tanh_sinh<double> rule(15), inner_rule(15);

    // x = -t/(1-t), w = 1 - t; (y - x) w = y w + t
    auto outer = [&](double t, double, double w) {
        double lx = std::log((2 + two_a) * w + t) + std::log(2 * w + t) - 2 * std::log(w);
        auto f = [&](double u, double lo, double hi) {
            budget.tick();
            double den = (2 + u) * w + t;
            return (lx - std::log(lo) - std::log(hi)) / (den * den);
        };
        double err = 0, l1 = 0;
        double v = ts_integrate(inner_rule, f, 0.0, two_a, inner_tol, err, l1);
        inner.add(err, l1);
        return v;
    };
    double err = 0, l1 = 0;
    double v = ts_integrate(rule, outer, 0.0, 1.0, opt.tolerance, err, l1);
    return finish(v, err, l1, inner, budget, opt.tolerance, "lasso_cusp_integral");
}

QuadratureResult lasso_cone_integral(double a, double b, const QuadratureOptions& opt) {
    if (!(0.0 < a && a < b)) throw DomainError("lasso_cone_integral: need 0 < a < b");
    Budget budget{0, opt.max_evaluations};
    InnerError inner;
    const double inner_tol = std::max(opt.tolerance * 1e-3, 1e-15);

    auto outer = [&](double y, double ya, double by) {
        double cy = std::log1p(y * y) - std::log(ya) - std::log(by);
        auto f = [&](double x) {
            budget.tick();
            double num = std::log(std::abs(x - a)) + std::log(std::abs(x - b)) - std::log1p(x * x) + cy;
            double d = y - x;
            return num / (d * d);
        };
        double lo = -1.0 / y, hi = -b;
        if (lo == hi) return 0.0;
        double sign = 1.0;
        if (lo > hi) {
            std::swap(lo, hi);
            sign = -1.0;
        }
        double err = 0, l1 = 0;
        double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, inner_tol, &err, &l1);
        inner.add(err, l1);
        return sign * v;
    };
    double err = 0, l1 = 0;
    tanh_sinh<double> rule(15);
    double v = ts_integrate(rule, outer, a, b, opt.tolerance, err, l1);
    return finish(v, err, l1, inner, budget, opt.tolerance, "lasso_cone_integral");
}

QuadratureResult f_delta_integral(double delta, double r1, double r2, const QuadratureOptions& opt) {
    if (!(0.0 <= r1 && r1 <= r2 && r2 <= kPi / 2 * (1 + 1e-15)))
        throw DomainError("f_delta_integral: need 0 <= r1 <= r2 <= pi/2");
    if (!(std::abs(delta) < kPi / 2)) throw DomainError("f_delta_integral: delta outside (-pi/2, pi/2)");
    if (r1 <= -delta && -delta <= r2) throw DomainError("f_delta_integral: -delta lies in [r1, r2]");
    if (r1 == r2) return {};
    Budget budget{0, opt.max_evaluations};
    auto f = [&](double t, double, double) {
        budget.tick();
        return std::log(std::sin(t)) / std::tan(t + delta);
    };
    double err = 0, l1 = 0;
    tanh_sinh<double> rule(15);
    double v = ts_integrate(rule, f, r1, r2, opt.tolerance, err, l1);
    return finish(v, err, l1, InnerError{}, budget, opt.tolerance, "f_delta_integral");
}

bool CheckReport::ok() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.violations == 0; });
}

namespace {

using Rng = std::mt19937_64;

double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string describe(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [k, v] : kv) os << k << "=" << v << " ";
    return os.str();
}

SampleOutcome skipped(std::string why) { return {SampleOutcome::skipped, 0.0, std::move(why)}; }
SampleOutcome failed(double res, std::string why) { return {SampleOutcome::failed, res, std::move(why)}; }

constexpr double kAngleTol = 1e-9;

} // namespace

SampleOutcome check_outq(double delta, double s) {
    // mu is the unit circle, b and d the circles |z| = e^{-delta}, e^{delta}, x = tanh s + i sech s
    Complex x(std::tanh(s), 1.0 / std::cosh(s));
    double alpha = std::exp(-delta), beta = std::exp(delta);
    double h = std::cosh(delta), rad = std::sinh(delta);

    // acute angle at x between mu and the geodesic through x orthogonal to |z| = rho
    auto half_angle = [&](double rho) {
        double cen = (std::norm(x) + rho * rho) / (2 * x.real());
        Complex u = Complex(0, 1) * x, v = Complex(0, 1) * (x - cen);
        Complex p = std::conj(u) * v;
        return std::atan2(std::abs(p.imag()), std::abs(p.real()));
    };
    double phi1 = 2 * half_angle(alpha), phi2 = 2 * half_angle(beta);

    // Q: between b and d, outside the half-discs bounded by a = (-beta, -alpha) and c = (alpha, beta)
    double pc = std::norm(x - h) - rad * rad;
    double pa = std::norm(x + h) - rad * rad;
    double mod = std::abs(x);
    bool in_q = alpha < mod && mod < beta && pc > 0 && pa > 0;

    OutQ q = outq_evaluate(delta, s);
    if (std::abs(q.phi - kPi / 2) < 1e-12) return skipped("phi at the pi/2 boundary");
    if (std::abs(pc) < 1e-9 * (1 + h * h)) return skipped("x near the side c");

    double res = std::max(std::abs(phi1 - q.phi), std::abs(phi2 - q.phi));
    auto where = describe({{"delta", delta}, {"s", s}});
    if (res > kAngleTol) return failed(res, "phi mismatch " + where);
    if (q.applicable && in_q) return failed(res, "phi <= pi/2 but x in Q " + where);
    if (q.applicable && q.certified == in_q) return failed(res, "certificate disagrees " + where);
    return {SampleOutcome::passed, res, {}};
}

SampleOutcome check_cotphi(double x, double y, ExtReal c, ExtReal d) {
    double lo = std::min(x, y), hi = std::max(x, y);
    auto inside = [&](const ExtReal& t) { return !t.is_inf() && lo < t.v && t.v < hi; };
    if (inside(c) == inside(d)) throw DomainError("check_cotphi: geodesics do not cross");
    if (!inside(c)) std::swap(c, d);
    // c inside [x, y]; d outside, possibly infinite

    double z1 = (x + y) / 2, r1 = (hi - lo) / 2;
    double qx = c.v - z1;
    if (!d.is_inf()) {
        double z2 = (c.v + d.v) / 2, r2 = std::abs(d.v - c.v) / 2;
        double dd = z2 - z1;
        qx = (dd * dd + (r1 - r2) * (r1 + r2)) / (2 * dd);
    }
    // angle at the centre of [x, y] from the direction of y to the crossing point
    double p = y > x ? qx : -qx;
    double qy = std::sqrt(std::max(0.0, (r1 - p) * (r1 + p)));
    double phi_direct = std::atan2(qy, p);
    if (phi_direct < 1e-6 || kPi - phi_direct < 1e-6) return skipped("near-tangent crossing");

    AngleCot2 v = intersection_angle_cot2(x, y, c, d);
    double phi = 2 * std::atan2(1.0, std::sqrt(v.value));
    double res = std::abs(phi - phi_direct);
    if (v.via_limit != d.is_inf()) return failed(res, "limit flag mismatch");
    if (res > kAngleTol) return failed(res, describe({{"x", x}, {"y", y}, {"c", c.v}, {"residual", res}}));
    return {SampleOutcome::passed, res, {}};
}

SampleOutcome check_bilip(double ell, double angle) {
    auto [lo, hi] = boundary_derivative_range(ell);
    // |(M_z^{-1})'(w)| = (1 - |z|^2)/|1 - conj(z) w|^2, |z| = tanh(ell/2), angle = arg w - arg z
    double t = std::tanh(ell / 2);
    double omt = 2.0 / (1.0 + std::exp(ell));
    double sh = std::sin(angle / 2);
    double ch = 1.0 / std::cosh(ell / 2);
    double v = ch * ch / (omt * omt + 4 * t * sh * sh);
    double res = std::max({0.0, std::log(lo) - std::log(v), std::log(v) - std::log(hi)});
    if (res > 1e-12) return failed(res, describe({{"ell", ell}, {"angle", angle}}));
    return {SampleOutcome::passed, res, {}};
}

namespace {

SampleOutcome outq_sample(Rng& rng) {
    double delta = log_uniform(rng, 0.1, 10.0);
    double s = log_uniform(rng, 0.1, 10.0);
    return check_outq(delta, s);
}

SampleOutcome cotphi_sample(Rng& rng) {
    double x = uniform(rng, -5, 5);
    double y = x + log_uniform(rng, 0.1, 10.0);
    if (uniform(rng, 0, 1) < 0.5) std::swap(x, y);
    double lo = std::min(x, y), hi = std::max(x, y);
    double c = lo + uniform(rng, 0.0, 1.0) * (hi - lo);
    double gap = log_uniform(rng, 0.1, 10.0);
    bool vertical = uniform(rng, 0, 1) < 0.1;
    double e = uniform(rng, 0, 1) < 0.5 ? hi + gap : lo - gap;
    ExtReal ce = c, d = vertical ? ExtReal::infinity() : ExtReal(e);
    if (uniform(rng, 0, 1) < 0.5) std::swap(ce, d);
    return check_cotphi(x, y, ce, d);
}

SampleOutcome bilip_sample(Rng& rng) {
    double ell = log_uniform(rng, 0.1, 10.0);
    double psi = uniform(rng, 0, 2 * kPi), theta = uniform(rng, 0, 2 * kPi);
    return check_bilip(ell, theta - psi);
}

} // namespace

CheckReport sample_lemma_checks(std::uint64_t seed, std::size_t count, const std::vector<std::string>& suites) {
    if (count == 0) throw DomainError("sample_lemma_checks: count must be positive");
    CheckReport rep;
    const auto& names = lemma_suite_names();
    for (const auto& name : suites) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw DomainError("sample_lemma_checks: unknown suite " + name);
        std::seed_seq sq{seed, std::uint64_t(it - names.begin())};
        Rng rng(sq);
        SuiteReport r;
        r.name = name;
        for (std::size_t i = 0; i < count; ++i) {
            ++r.samples;
            SampleOutcome o = name == "outq" ? outq_sample(rng) : name == "cotphi" ? cotphi_sample(rng) : bilip_sample(rng);
            switch (o.status) {
            case SampleOutcome::passed:
                ++r.passed;
                r.worst_residual = std::max(r.worst_residual, o.residual);
                break;
            case SampleOutcome::failed:
                ++r.violations;
                r.worst_residual = std::max(r.worst_residual, o.residual);
                if (r.failures.size() < 8) r.failures.push_back(o.detail);
                break;
            case SampleOutcome::skipped:
                ++r.skipped;
                ++r.skip_reasons[o.detail];
                break;
            }
        }
        rep.suites.push_back(std::move(r));
    }
    return rep;
}

} // namespace ortho
