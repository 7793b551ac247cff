#include "test_main.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ortho/dilog.hpp"
#include "ortho/terms.hpp"

using namespace ortho;
using std::numbers::pi;

namespace {

double RL(double x) { return rogers_L_real(x); }

} // namespace

TEST_CASE("bridgeman term") {
    CHECK(br_term(1e-9) == doctest::Approx(4 * pi * pi / 3).epsilon(1e-12));
    CHECK(br_term(80.0) < 1e-30);
    CHECK(br_term(2 * std::asinh(1.0)) == doctest::Approx(2 * pi * pi / 3).epsilon(1e-14));
    double prev = br_term(0.01);
    for (int i = 2; i <= 500; ++i) {
        double v = br_term(0.01 * i);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(br_term(0.0), DomainError);
}

TEST_CASE("geodesic lasso") {
    CHECK(lasso_geodesic(2.0, 60.0) == doctest::Approx(0.0));
    // x -> 0: 2(L(y) - L(1) + L(1 - y)) = 0 by reflection
    CHECK(std::abs(lasso_geodesic(60.0, 1.3)) < 1e-14);
    for (double A : {0.1, 1.0, 4.0})
        for (double sg : {0.2, 1.0, 3.0}) CHECK(lasso_geodesic(A, sg) >= 0.0);
    // continuity: a shrinking geodesic boundary becomes a cusp in the same pants family
    double G = 2.0, B = 1.3;
    PantsGeometry cusp = pants_seams(BoundaryEnd::cusp(), BoundaryEnd::geodesic(B), G);
    double target = lasso_cusp(cusp.m_bar_alpha);
    double prev_err = 1e9;
    for (double A : {1e-2, 1e-4, 1e-6, 1e-8}) {
        PantsGeometry pg = pants_seams(BoundaryEnd::geodesic(A), BoundaryEnd::geodesic(B), G);
        double err = std::abs(lasso_geodesic(A, pg.sigma_alpha) - target);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-6);
    // the value at (2, 1) lies on the same family
    double v = lasso_geodesic(2.0, 1.0);
    CHECK(v > 0.0);
    CHECK(v < lasso_geodesic(1.0, 1.0));
    CHECK_THROWS_AS(lasso_geodesic(0.0, 1.0), DomainError);
}

TEST_CASE("cusp lasso") {
    CHECK(lasso_cusp(0.0) == doctest::Approx(pi * pi / 3).epsilon(1e-15));
    CHECK(lasso_cusp(80.0) < 1e-30);
    CHECK(lasso_cusp(1.0) == doctest::Approx(4 * RL(1 / (1 + std::numbers::e))).epsilon(1e-15));
    CHECK_THROWS_AS(lasso_cusp(-0.1), DomainError);
}

TEST_CASE("cone lasso parameters") {
    for (double m : {0.5, 1.0, 3.0}) {
        auto [a, b] = cone_ab(m, 1e-9);
        CHECK(a == doctest::Approx(std::tanh(m / 2)).epsilon(1e-8));
        CHECK(b == doctest::Approx(1 / std::tanh(m / 2)).epsilon(1e-8));
    }
    auto [a, b] = cone_ab(1.0, pi / 2);
    CHECK(0 < a);
    CHECK(a < b);
    CHECK(b < 1);
    for (double th : {0.3, pi / 4, pi / 2}) {
        auto [a2, b2] = cone_ab(40.0, th);
        double lim = std::cos(th / 2) / (1 + std::sin(th / 2));
        CHECK(a2 == doctest::Approx(lim).epsilon(1e-12));
        CHECK(b2 == doctest::Approx(lim).epsilon(1e-12));
    }
    CHECK_THROWS_AS(cone_ab(0.05, pi / 2), DomainError);
    CHECK_THROWS_AS(cone_ab(1.0, 2.0), DomainError);
}

TEST_CASE("cone lasso closed forms") {
    for (double m : {0.5, 1.0, 2.0, 4.0})
        for (double th : {0.2, pi / 4, pi / 2}) {
            if (m == 0.5 && th == pi / 2) continue; // a <= 0
            double sh = std::sinh(m);
            ComplexValue z = ComplexValue(sh + std::tan(th / 2)) / ComplexValue(sh, 1);
            CHECK(z.imag() < 0);
            CHECK((1.0 / z).imag() > 0);
            auto [a, b] = cone_ab(m, th);
            CHECK(lasso_cone(m, th) == doctest::Approx(lasso_cone_closed(a, b)).epsilon(1e-11));
        }
    CHECK(std::abs(lasso_cone(30.0, pi / 4)) < 1e-10);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6) continue;
        CHECK(std::abs(lasso_cone_eight_terms(a, b) - lasso_cone_closed(a, b)) <= 1e-10);
    }
}

TEST_CASE("F_delta") {
    CHECK(f_delta(0.0, pi / 6, pi / 2) == doctest::Approx(-std::log(2.0) * std::log(2.0) / 2).epsilon(1e-14));
    auto quad = [](double d, double r1, double r2) {
        auto f = [d](double t) { return std::log(std::sin(t)) * std::cos(t + d) / std::sin(t + d); };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, r1, r2, 20, 1e-14);
    };
    CHECK(std::abs(f_delta(0.3, 0.2, 1.0) - quad(0.3, 0.2, 1.0)) <= 1e-8);
    CHECK(std::abs(f_delta(-0.4, 0.5, 1.2) - quad(-0.4, 0.5, 1.2)) <= 1e-8);
    CHECK(std::abs(f_delta(1.2, 0.3, pi / 2) - quad(1.2, 0.3, pi / 2)) <= 1e-8);
    CHECK(std::abs(f_delta(-1.3, 0.0, 1.0)) < 1e3);
    CHECK_THROWS_AS(f_delta(-0.5, 0.2, 1.0), DomainError);
    CHECK_THROWS_AS(f_delta(0.1, 1.0, 0.5), DomainError);
    // r1 = 0 is an integrable log singularity
    auto f0 = [](double t) { return std::log(std::sin(t)) * std::cos(t + 0.4) / std::sin(t + 0.4); };
    double q0 = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f0, 0.0, 1.1, 30, 1e-13);
    CHECK(std::abs(f_delta(0.4, 0.0, 1.1) - q0) <= 1e-8);
}

TEST_CASE("h of pants: degenerate and symmetric cases") {
    double g = 4 * std::asinh(1.0);
    PantsGeometry cc = pants_seams(BoundaryEnd::cusp(), BoundaryEnd::cusp(), g);
    TermValue h = h_of_pants(cc);
    double expect = 4 * pi * pi - 8 * RL(0.5) - 32 * RL(1 / (1 + std::sqrt(2.0)));
    CHECK(h.value == doctest::Approx(expect).epsilon(1e-13));
    double sum = 0;
    for (const auto& p : h.parts) sum += p.multiplicity * p.value;
    CHECK(sum == doctest::Approx(h.value).epsilon(1e-15));

    PantsGeometry dc = spine_only_pants(BoundaryEnd::cusp(kInfiniteGrade), BoundaryEnd::geodesic(1.0), 2.0);
    CHECK(h_of_pants(dc).value == 0.0);
    BoundaryEnd ginf = BoundaryEnd::geodesic(1.0, kInfiniteGrade);
    PantsGeometry br = spine_only_pants(ginf, BoundaryEnd::geodesic(2.0, kInfiniteGrade), 1.7);
    CHECK(h_of_pants(br).value == doctest::Approx(8 * RL(1 / std::pow(std::cosh(0.85), 2))).epsilon(1e-15));

    // case 1: only beta and gamma terms remain
    PantsGeometry d1 = degenerate_pants_seams(ginf, BoundaryEnd::cusp(), 1.5);
    TermValue h1 = h_of_pants(d1);
    double e1 = 4 * pi * pi - br_term(d1.sigma_gamma) - 4 * lasso_cusp(d1.m_bar_beta);
    CHECK(h1.value == doctest::Approx(e1).epsilon(1e-14));

    PantsGeometry bad = pants_seams(BoundaryEnd::cone(pi / 3, 2), BoundaryEnd::cusp(), 2.0);
    CHECK_THROWS_AS(h_of_pants(bad), DomainError);
}

TEST_CASE("h of pants: range and grade monotonicity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto rand_end = [&]() {
        int kind = int(u(rng) * 3);
        int k = 1 + int(u(rng) * 4);
        if (kind == 0) return BoundaryEnd::geodesic(0.1 * std::pow(100.0, u(rng)), k);
        if (kind == 1) return BoundaryEnd::cusp(k);
        return BoundaryEnd::cone((0.05 + 0.95 * u(rng)) * pi / (2 * k), k);
    };
    int evaluated = 0;
    while (evaluated < 1000) {
        BoundaryEnd a = rand_end(), b = rand_end();
        double G = 0.1 * std::pow(100.0, u(rng));
        PantsGeometry pg = pants_seams(a, b, G);
        TermValue h;
        try {
            h = h_of_pants(pg);
        } catch (const DomainError&) {
            continue; // cone lasso domain with b >= 1
        }
        CHECK(h.value >= -1e-12);
        CHECK(h.value < 4 * pi * pi);
        ++evaluated;
    }
    // grade increases at a fixed orthogeodesic
    for (double mu : {3.5, 5.0, 7.0}) {
        double prev = 1e9;
        for (int k = 1; k <= 5; ++k) {
            PantsGeometry pg = pants_from_spine(BoundaryEnd::geodesic(0.8, k), BoundaryEnd::geodesic(1.1), mu);
            double v = h_of_pants(pg).value;
            CHECK(v < prev);
            prev = v;
        }
    }
    for (double mu1 : {1.5, 2.5, 4.0}) {
        double prev = 1e9;
        for (int k = 1; k <= 5; ++k) {
            // the truncated length grows by ln k when the cusp collar shrinks
            PantsGeometry pg = pants_from_spine(BoundaryEnd::cusp(k), BoundaryEnd::geodesic(1.1), mu1 + std::log(k));
            double v = h_of_pants(pg).value;
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("phi") {
    CHECK(phi(1e-12) == doctest::Approx(pi * pi / 4).epsilon(1e-4));
    CHECK(phi(60.0) < 1e-24);
    CHECK(phi(60.0) > 0.0);
    CHECK(phi(std::log(2.0)) * 16 ==
          doctest::Approx(h_of_pants(pants_seams(BoundaryEnd::cusp(), BoundaryEnd::cusp(), 4 * std::asinh(1.0))).value)
              .epsilon(1e-13));
    for (double L : {0.1, 1.0, 5.0, 12.0}) {
        CHECK(std::abs(phi(L) - graded_summand_trunc(L)) <= 1e-14);
        CHECK(std::abs(phi(L) - phi_decomposed(L)) <= 1e-10);
    }
    // relative accuracy far out, against the leading asymptotic
    double L = 30.0;
    CHECK(phi(L) == doctest::Approx(std::exp(-L) * (0.5 + L / 4 + std::log(2.0) / 2)).epsilon(1e-9));
    CHECK(phi_lower_bound(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(phi(2.0) >= std::exp(-2.0));
    CHECK(phi_lower_bound(10.0) == doctest::Approx(3 * std::exp(-10.0)).epsilon(1e-15));
    CHECK(phi(10.0) >= phi_lower_bound(10.0));
    CHECK(phi_lower_bound(1e-12) == doctest::Approx(0.5));
    CHECK_THROWS_AS(phi(0.0), DomainError);
}

TEST_CASE("unit tangent volume") {
    CHECK(unit_tangent_volume(1) == doctest::Approx(4 * pi * pi));
    CHECK(unit_tangent_volume(0) == 0.0);
    CHECK(unit_tangent_volume(2 * 2 + 3 - 2) == doctest::Approx(4 * pi * pi * 5));
}

TEST_CASE("graded summands agree") {
    for (int i = 0; i < 200; ++i) {
        double G = 0.2 + (20.0 - 0.2) * i / 199;
        CuspPantsLengths t = cusp_pants_lengths(G);
        double s1 = graded_summand_mbar(t.m_bar), s2 = graded_summand_gamma(G), s3 = graded_summand_trunc(t.ell_mu_bar);
        CHECK(std::abs(s1 - s2) <= 1e-10);
        CHECK(std::abs(s2 - s3) <= 1e-10);
        CHECK(std::abs(16 * phi(t.ell_mu_bar) - simple_identity_summand(t.ell_sigma_gamma, t.m_bar)) <= 1e-10);
    }
}
