#include "ortho/dilog.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace ortho {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;
constexpr double kCutSnap = 1e-14;

// B_{2k} / (2k+1)!
const std::array<double, 24>& bernoulli_coeffs() {
    static const std::array<double, 24> c = [] {
        std::array<double, 24> out{};
        for (int k = 1; k <= 24; ++k)
            out[k - 1] = boost::math::bernoulli_b2n<double>(k) /
                         boost::math::factorial<double>(2 * k + 1);
        return out;
    }();
    return c;
}

template <class C, class Coeffs>
C bernoulli_series(const C& u, const Coeffs& coeffs, double eps) {
    using R = typename C::value_type;
    C u2 = u * u;
    C sum = u - u2 / R(4);
    C p = u;
    for (const auto& b : coeffs) {
        p *= u2;
        C t = p * b;
        sum += t;
        if (abs(t) <= abs(sum) * eps) break;
    }
    return sum;
}

ComplexValue li2_core(ComplexValue z) {
    // |z| <= 1, Re z <= 1/2
    ComplexValue u = -std::log(1.0 - z);
    return bernoulli_series(u, bernoulli_coeffs(), 1e-18);
}

ComplexValue li2_unit(ComplexValue z) {
    // |z| <= 1
    if (z.real() > 0.5) {
        ComplexValue w = 1.0 - z;
        if (w == 0.0) return kPi2Over6;
        return kPi2Over6 - std::log(z) * std::log(w) - li2_core(w);
    }
    return li2_core(z);
}

double li2_real_core(double x) {
    // x in [-1, 1/2]
    double u = -std::log1p(-x);
    double u2 = u * u;
    double sum = u - u2 / 4;
    double p = u;
    for (double b : bernoulli_coeffs()) {
        p *= u2;
        double t = p * b;
        sum += t;
        if (std::abs(t) <= std::abs(sum) * 1e-18) break;
    }
    return sum;
}

// Li2(x +- i0) for x > 1
ComplexValue li2_on_cut(double x, double side) {
    double l = std::log(x);
    double re = 2.0 * kPi2Over6 - 0.5 * l * l - dilog_real(1.0 / x);
    return {re, side * std::numbers::pi * l};
}

} // namespace

double dilog_real(double x) {
    if (std::isnan(x)) throw DomainError("dilog_real: NaN input");
    if (x > 1.0) throw DomainError("dilog_real: argument on the cut (1, inf)");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return kPi2Over6;
    if (x < -1.0) {
        double l = std::log(-x);
        return -li2_real_core(1.0 / x) - kPi2Over6 - 0.5 * l * l;
    }
    if (x > 0.5) {
        if (x == 1.0) return kPi2Over6;
        return kPi2Over6 - std::log(x) * std::log1p(-x) - li2_real_core(1.0 - x);
    }
    return li2_real_core(x);
}

double rogers_L_real(double x) {
    if (std::isnan(x)) throw DomainError("rogers_L_real: NaN input");
    if (x > 1.0) throw DomainError("rogers_L_real: argument above 1");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return kPi2Over6;
    if (x > 0.5) {
        // L(x) = pi^2/6 - L(1-x) keeps full accuracy near 1
        double y = 1.0 - x;
        return kPi2Over6 - (dilog_real(y) + 0.5 * std::log(y) * std::log(x));
    }
    return dilog_real(x) + 0.5 * std::log(std::abs(x)) * std::log1p(-x);
}

ComplexValue dilog(ComplexValue z) {
    double x = z.real(), y = z.imag();
    if (std::isnan(x) || std::isnan(y)) throw DomainError("dilog: NaN input");
    if (y == 0.0 && x <= 1.0) return {dilog_real(x), 0.0};
    if (x > 1.0 && std::abs(y) < kCutSnap) {
        if (y == 0.0) throw DomainError("dilog: argument on the cut (1, inf)");
        return li2_on_cut(x, y > 0 ? 1.0 : -1.0);
    }
    if (std::abs(z) > 1.0) {
        ComplexValue l = std::log(-z);
        return -li2_unit(1.0 / z) - kPi2Over6 - 0.5 * l * l;
    }
    return li2_unit(z);
}

ComplexValue rogers_L(ComplexValue z) {
    double x = z.real(), y = z.imag();
    if (std::isnan(x) || std::isnan(y)) throw DomainError("rogers_L: NaN input");
    if (y == 0.0) {
        if (x < 0.0 || x > 1.0) throw DomainError("rogers_L: argument on a cut");
        return {rogers_L_real(x), 0.0};
    }
    ComplexValue lz, l1z;
    if (x < 0.0 && std::abs(y) < kCutSnap) {
        double side = y > 0 ? 1.0 : -1.0;
        lz = {std::log(-x), side * std::numbers::pi};
    } else {
        lz = std::log(z);
    }
    if (x > 1.0 && std::abs(y) < kCutSnap) {
        double side = y > 0 ? 1.0 : -1.0;
        l1z = {std::log(x - 1.0), -side * std::numbers::pi};
    } else {
        l1z = std::log(1.0 - z);
    }
    return dilog(z) + 0.5 * lz * l1z;
}

namespace {

using RealExt = ComplexExt::value_type;

const std::vector<RealExt>& bernoulli_coeffs_ext() {
    static const std::vector<RealExt> c = [] {
        std::vector<RealExt> out;
        for (int k = 1; k <= 45; ++k)
            out.push_back(boost::math::bernoulli_b2n<RealExt>(k) /
                          boost::math::factorial<RealExt>(2 * k + 1));
        return out;
    }();
    return c;
}

RealExt pi2_over6_ext() {
    RealExt p = boost::math::constants::pi<RealExt>();
    return p * p / 6;
}

ComplexExt li2_unit_ext(const ComplexExt& z) {
    ComplexExt one(1);
    if (z.real() > RealExt(0.5)) {
        ComplexExt w = one - z;
        if (w == ComplexExt(0)) return ComplexExt(pi2_over6_ext());
        ComplexExt u = -log(z);
        return ComplexExt(pi2_over6_ext()) - log(z) * log(w) -
               bernoulli_series(u, bernoulli_coeffs_ext(), 1e-55);
    }
    ComplexExt u = -log(one - z);
    return bernoulli_series(u, bernoulli_coeffs_ext(), 1e-55);
}

} // namespace

ComplexExt dilog_ext(const ComplexExt& z) {
    RealExt x = z.real(), y = z.imag();
    if (y == 0 && x > 1) throw DomainError("dilog_ext: argument on the cut (1, inf)");
    if (z == ComplexExt(0)) return ComplexExt(0);
    if (abs(z) > 1) {
        ComplexExt l = log(-z);
        return -li2_unit_ext(ComplexExt(1) / z) - ComplexExt(pi2_over6_ext()) - l * l / 2;
    }
    return li2_unit_ext(z);
}

ComplexExt rogers_L_ext(const ComplexExt& z) {
    if (z == ComplexExt(0)) return ComplexExt(0);
    if (z == ComplexExt(1)) return ComplexExt(pi2_over6_ext());
    return dilog_ext(z) + log(z) * log(ComplexExt(1) - z) / 2;
}

} // namespace ortho
