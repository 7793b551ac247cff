#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ortho/spectra.hpp"

namespace ortho {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Pt {
    Real x, y;
};

/// Determinant +-1; determinant -1 acts on the conjugate.
struct RMat {
    Real a, b, c, d;
};

RMat mul(const RMat& p, const RMat& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

RMat inverse(const RMat& m) {
    Real det = m.a * m.d - m.b * m.c;
    return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

Pt act(const RMat& m, const Pt& z) {
    Real det = m.a * m.d - m.b * m.c;
    Real y = det > 0 ? z.y : Real(-z.y);
    Real p = m.a * z.x + m.b, q = m.a * y;
    Real r = m.c * z.x + m.d, s = m.c * y;
    Real den = r * r + s * s;
    return {(p * r + q * s) / den, (q * r - p * s) / den};
}

/// Maps i to p.
RMat lift_to(const Pt& p) {
    Real sy = sqrt(p.y);
    return {sy, p.x / sy, Real(0), 1 / sy};
}

RMat rotation(const Pt& p, const Real& theta) {
    Real h = theta / 2;
    RMat r{cos(h), sin(h), -sin(h), cos(h)};
    RMat s = lift_to(p);
    return mul(mul(s, r), inverse(s));
}

Real dist(const Pt& z, const Pt& w) {
    Real dx = z.x - w.x, dy = z.y - w.y;
    Real u = (dx * dx + dy * dy) / (2 * z.y * w.y);
    return log1p(u + sqrt(u * (u + 2)));
}

struct Triangle {
    Pt v[3];
    RMat rho[3];
    RMat side[3]; // reflections in QR, RP, PQ
    double diam;
};

Triangle model_triangle(int k) {
    const Real pi = boost::math::constants::pi<Real>();
    Real alpha = pi / (2 * k);
    Real d = acosh(cos(alpha) / (1 - cos(alpha)));
    Triangle t;
    t.v[0] = {Real(0), Real(1)};
    t.v[1] = {Real(0), exp(d)};
    RMat flip{Real(-1), Real(0), Real(0), Real(1)};
    Real best = -1;
    for (int sg : {1, -1}) {
        Pt r = act(rotation(t.v[0], sg * alpha), t.v[1]);
        RMat rp = rotation(t.v[0], pi / k), rq = rotation(t.v[1], pi / k), rr = rotation(r, pi / k);
        RMat prod = mul(mul(rp, rq), rr);
        Real dev = abs(abs(prod.a) - 1) + abs(prod.b) + abs(prod.c) + abs(abs(prod.d) - 1);
        if (best < 0 || dev < best) {
            best = dev;
            t.v[2] = r;
            t.rho[0] = rp;
            t.rho[1] = rq;
            t.rho[2] = rr;
            RMat at_p = rotation(t.v[0], sg * alpha), at_q = rotation(t.v[1], -sg * alpha);
            t.side[2] = flip;
            t.side[1] = mul(mul(at_p, flip), inverse(at_p));
            t.side[0] = mul(mul(at_q, flip), inverse(at_q));
        }
    }
    if (best > Real(1e-30)) throw GeometryError("model_realization_check: triangle group relation fails");
    t.diam = static_cast<double>(d);
    return t;
}

RMat word_image(const Triangle& t, const std::string& w) {
    RMat m{Real(1), Real(0), Real(0), Real(1)};
    RMat p_inv = inverse(t.rho[0]), q_inv = inverse(t.rho[1]);
    for (char ch : w) {
        switch (ch) {
        case 'A': m = mul(m, t.rho[0]); break;
        case 'a': m = mul(m, p_inv); break;
        case 'B': m = mul(m, q_inv); break;
        case 'b': m = mul(m, t.rho[1]); break;
        default: throw DomainError("model_realization_check: word must use A, a, B, b");
        }
    }
    return m;
}

} // namespace

const char* to_string(ModelVerdict v) {
    switch (v) {
    case ModelVerdict::realizable: return "realizable";
    case ModelVerdict::not_realizable: return "not_realizable";
    case ModelVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

ModelVerdict model_realization_check(const OrthoClass& cls, const FuchsianSurface& s) {
    if (s.kind != SurfaceKind::thrice_punctured_sphere)
        throw DomainError("model_realization_check: needs the thrice-punctured sphere");
    int k = s.grading.at(0);
    if (!std::all_of(s.grading.begin(), s.grading.end(), [k](int x) { return x == k; }) || k < 2 ||
        k == kInfiniteGrade)
        throw DomainError("model_realization_check: needs a uniform finite grading k >= 2");
    auto [a, b] = cls.end_pair;
    if (a < 0 || a > 2 || b < 0 || b > 2) throw DomainError("model_realization_check: bad end pair");

    Triangle t = model_triangle(k);
    Pt x0 = t.v[a];
    Pt x1 = act(word_image(t, cls.word), t.v[b]);
    Real ell = dist(x0, x1);
    if (ell < Real(1e-30)) return ModelVerdict::not_realizable;

    // isometry taking x0 to i and x1 up the imaginary axis, where w = (z - i) / (z + i) is positive
    RMat to_i = inverse(lift_to(x0));
    Pt y = act(to_i, x1);
    Real wx = y.x, wy = y.y - 1, vx = y.x, vy = y.y + 1; // w = (y - i) / (y + i)
    Real den = vx * vx + vy * vy;
    Real dre = (wx * vx + wy * vy) / den, dim = (wy * vx - wx * vy) / den;
    RMat norm;
    bool found = false;
    for (int sg : {1, -1}) {
        Real theta = -sg * atan2(dim, dre);
        RMat cand = mul(rotation({Real(0), Real(1)}, theta), to_i);
        Pt z = act(cand, x1);
        if (abs(z.x) < Real(1e-35) * z.y && z.y > 1) {
            norm = cand;
            found = true;
            break;
        }
    }
    if (!found) return ModelVerdict::inconclusive;
    double ld = static_cast<double>(ell);

    auto seg_dist = [ld](const Pt& z) {
        double x = static_cast<double>(z.x), y = static_cast<double>(z.y);
        double h = std::hypot(x, y);
        if (h >= 1.0 && h <= std::exp(ld)) return std::asinh(std::abs(x) / y);
        double e = std::exp(ld);
        auto hd = [](double ax, double ay, double bx, double by) {
            double u = ((ax - bx) * (ax - bx) + (ay - by) * (ay - by)) / (2 * ay * by);
            return std::log1p(u + std::sqrt(u * (u + 2)));
        };
        return std::min(hd(x, y, 0, 1), hd(x, y, 0, e));
    };

    Pt probe{(t.v[0].x + t.v[1].x + t.v[2].x) / 3, (t.v[0].y + t.v[1].y + t.v[2].y) / 3};
    auto key_of = [&](const RMat& g) {
        Pt c = act(g, probe);
        return std::make_pair(std::llround(std::log(static_cast<double>(c.y)) * 1e8),
                              std::llround(static_cast<double>(c.x / c.y) * 1e8));
    };
    std::set<std::pair<long long, long long>> seen;
    std::deque<RMat> queue;
    queue.push_back(norm);
    seen.insert(key_of(norm));
    bool ambiguous = false;
    const Real hi = Real(1e-12), lo = Real(1e-30);
    while (!queue.empty()) {
        if (seen.size() > 500000) return ModelVerdict::inconclusive;
        RMat g = queue.front();
        queue.pop_front();
        for (const Pt& v : t.v) {
            Pt z = act(g, v);
            Real r2 = z.x * z.x + z.y * z.y;
            Real lr = log(r2) / 2;
            Real ratio = abs(z.x) / z.y;
            if (ratio > hi) continue;
            if (abs(lr) < Real(1e-20) || abs(lr - ell) < Real(1e-20)) continue; // an endpoint
            if (lr <= 0 || lr >= ell) continue;
            if (ratio < lo) return ModelVerdict::not_realizable;
            ambiguous = true;
        }
        for (const RMat& r : t.side) {
            RMat h = mul(g, r);
            double near = 1e300;
            for (const Pt& v : t.v) near = std::min(near, seg_dist(act(h, v)));
            if (near > t.diam + 1e-6) continue;
            if (seen.insert(key_of(h)).second) queue.push_back(h);
        }
    }
    return ambiguous ? ModelVerdict::inconclusive : ModelVerdict::realizable;
}

} // namespace ortho
