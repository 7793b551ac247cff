#include "test_main.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "json.hpp"
#include "ortho/dilog.hpp"
#include "ortho/spectra.hpp"
#include "ortho/terms.hpp"

using namespace ortho;
using std::numbers::pi;

namespace {

// Independent free-group helpers for the brute-force canonical form.
std::string free_reduce(const std::string& w) {
    std::string out;
    for (char c : w) {
        char inv = std::isupper(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c))
                                                                : static_cast<char>(std::toupper(c));
        if (!out.empty() && out.back() == inv)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string free_power(const std::string& u, int m) {
    std::string base = u;
    if (m < 0) {
        base.assign(u.rbegin(), u.rend());
        for (char& c : base) c = std::isupper(static_cast<unsigned char>(c)) ? std::tolower(c) : std::toupper(c);
    }
    std::string out;
    for (int i = 0; i < std::abs(m); ++i) out += base;
    return out;
}

std::string brute_canonical(const std::string& w, int a, int b) {
    const char* stab[3] = {"A", "B", "Ab"};
    int K = static_cast<int>(w.size()) + 4;
    std::string best;
    bool have = false;
    for (int m1 = -K; m1 <= K; ++m1)
        for (int m2 = -K; m2 <= K; ++m2) {
            std::string c = free_reduce(free_power(stab[a], m1) + w + free_power(stab[b], m2));
            if (!have || c.size() < best.size() || (c.size() == best.size() && c < best)) {
                best = c;
                have = true;
            }
        }
    return best;
}

std::string random_word(std::mt19937_64& rng, int len) {
    const char letters[4] = {'A', 'a', 'B', 'b'};
    std::string w;
    std::uniform_int_distribution<int> pick(0, 3);
    while (static_cast<int>(w.size()) < len) {
        char c = letters[pick(rng)];
        w = free_reduce(w + c);
    }
    return w;
}

struct Horoball {
    bool at_inf;
    double base, diam; // diam is the height when at_inf
};

/// Image of the horoball {Im z > h} under m.
Horoball horoball_image(const MoebiusMap& m, double h) {
    if (std::abs(m.c) < 1e-300) return {true, 0.0, h * m.a * m.a};
    return {false, m.a / m.c, 1.0 / (h * m.c * m.c)};
}

Complex on_geodesic(double u, double v, double t) {
    double mid = (u + v) / 2, r = std::abs(u - v) / 2;
    return {mid + r * std::cos(t), r * std::sin(t)};
}

double inside(const Horoball& h, Complex z) {
    if (h.at_inf) return h.diam - z.imag();
    Complex c(h.base, h.diam / 2);
    return h.diam / 2 - std::abs(z - c);
}

/// Length of the geodesic between two horoballs, from the explicit horocycle crossings.
double horoball_gap(const Horoball& h1, const Horoball& h2) {
    if (h1.at_inf) return std::log(h1.diam / h2.diam);
    if (h2.at_inf) return std::log(h2.diam / h1.diam);
    double u = h1.base, v = h2.base;
    // t = 0 sits at the larger endpoint
    auto param_end = [&](double target) { return target == std::max(u, v) ? 0.0 : pi; };
    auto crossing = [&](const Horoball& h) {
        double t_in = param_end(h.base), t_out = pi / 2;
        for (int i = 0; i < 200; ++i) {
            double mid = (t_in + t_out) / 2;
            if (inside(h, on_geodesic(u, v, mid)) > 0)
                t_in = mid;
            else
                t_out = mid;
        }
        return on_geodesic(u, v, (t_in + t_out) / 2);
    };
    return hyperbolic_distance(crossing(h1), crossing(h2));
}

MoebiusMap chart(int a) {
    switch (a) {
    case 0: return {1, 0, 0, 1};
    case 1: return {0, -1, 1, 0};
    default: return {1, -1, 1, 0};
    }
}

std::set<std::string> class_ids(const std::vector<OrthoClass>& v) {
    std::set<std::string> out;
    for (const auto& c : v)
        out.insert(c.word + "|" + std::to_string(c.end_pair.first) + std::to_string(c.end_pair.second));
    return out;
}

} // namespace

TEST_CASE("thrice-punctured sphere") {
    auto s = thrice_punctured_sphere();
    CHECK(s.relation_residual() <= 1e-12);
    CHECK(s.euler_abs() == 1);
    CHECK(s.grading == std::vector<int>{2, 2, 2});
    const auto& A = s.generators[0].map;
    CHECK(A.apply(ExtReal(0.0)).v == 2.0);
    CHECK(A.apply(ExtReal(-3.5)).v == -1.5);
    CHECK(std::abs(A.trace()) == 2.0);

    CHECK_THROWS_AS(thrice_punctured_sphere({1, 1, 3}), DomainError);
    CHECK_THROWS_AS(thrice_punctured_sphere({2, 2}), DomainError);
    CHECK_THROWS_AS(thrice_punctured_sphere({0, 2, 2}), DomainError);
    CHECK_THROWS_AS(thrice_punctured_sphere({kInfiniteGrade, kInfiniteGrade, kInfiniteGrade}), DomainError);
    CHECK_NOTHROW(thrice_punctured_sphere({1, 2, 2}));
    CHECK_NOTHROW(thrice_punctured_sphere({2, 2, kInfiniteGrade}));
    CHECK(grading_violation(s, {1, 3, 1}) == "pants graded by a permutation of (1,1,m)");
}

TEST_CASE("pants group") {
    auto p = pants_group(2, 2, 2);
    for (const auto& g : p.generators) CHECK(std::abs(g.map.trace()) == doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-12));
    CHECK(p.relation_residual() <= 1e-12);
    auto q = pants_group(1, 1, 4);
    CHECK(std::abs(q.generators[0].map.trace()) == doctest::Approx(2 * std::cosh(0.5)).epsilon(1e-12));
    MoebiusMap xy = q.generators[0].map * q.generators[1].map;
    CHECK(std::abs(xy.trace()) == doctest::Approx(2 * std::cosh(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(pants_group(0, 1, 1), DomainError);
    CHECK_THROWS_AS(pants_group(1, -1, 1), DomainError);
}

TEST_CASE("words") {
    CHECK(reduce_word("AabBA") == "A");
    CHECK(reduce_word("1221") == "");
    CHECK(inverse_word("ABa") == "Aba");
    CHECK_THROWS_AS(reduce_word("AxB"), DomainError);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int a = trial % 3, b = (trial / 3) % 3;
        std::string w = random_word(rng, 1 + trial % 7);
        CHECK(canonical_word(w, a, b) == brute_canonical(w, a, b));
    }
    // invariance under the stabilizers
    auto s = thrice_punctured_sphere();
    for (int trial = 0; trial < 200; ++trial) {
        int a = trial % 3, b = (trial / 3) % 3;
        std::string w = random_word(rng, 2 + trial % 9);
        const char* stab[3] = {"A", "B", "Ab"};
        std::string v = free_power(stab[a], trial % 5 - 2) + w + free_power(stab[b], trial % 3 - 1);
        bool trivial = false;
        OrthoClass c1, c2;
        try {
            c1 = cusp_class_from_word(s, w, a, b);
        } catch (const DomainError&) {
            trivial = true;
        }
        if (trivial) {
            CHECK_THROWS_AS(cusp_class_from_word(s, v, a, b), DomainError);
            continue;
        }
        c2 = cusp_class_from_word(s, v, a, b);
        CHECK(c1.word == c2.word);
        CHECK(c1.p == c2.p);
        CHECK(c1.q == c2.q);
        // the canonical word represents the class
        auto c3 = cusp_class_from_word(s, c1.word, c1.end_pair.first, c1.end_pair.second);
        CHECK(c3.word == c1.word);
        // reversal
        auto r = cusp_class_from_word(s, inverse_word(w), b, a);
        CHECK(r.word == c1.word);
        CHECK(r.end_pair == c1.end_pair);
    }
}

TEST_CASE("enumerate double cosets") {
    auto s = thrice_punctured_sphere();
    auto d1 = enumerate_double_cosets(s, {0, 1}, 1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].word == "");
    // horoballs: height 2 at inf, diameter 1/2 at 0
    CHECK(d1[0].len_trunc == doctest::Approx(hyperbolic_distance({0, 2}, {0, 0.5})).epsilon(1e-14));

    auto d3 = enumerate_double_cosets(s, {0, 1}, 3);
    auto d5 = enumerate_double_cosets(s, {0, 1}, 5);
    auto i3 = class_ids(d3), i5 = class_ids(d5);
    CHECK(std::includes(i5.begin(), i5.end(), i3.begin(), i3.end()));
    CHECK(d5.size() > d3.size());
    for (std::size_t i = 1; i < d5.size(); ++i) CHECK(d5[i - 1].len_trunc <= d5[i].len_trunc);

    auto rev = enumerate_double_cosets(s, {1, 0}, 5);
    CHECK(class_ids(rev) == i5);

    auto loops = enumerate_double_cosets(s, {2, 2}, 4);
    for (const auto& c : loops) {
        std::string r = canonical_word(inverse_word(c.word), 2, 2);
        CHECK(r.size() == c.word.size());
        CHECK(c.word <= r);
    }
    CHECK_THROWS_AS(enumerate_double_cosets(s, {0, 1}, 0), DomainError);

    auto p = pants_group(2, 2, 2);
    auto pw = enumerate_double_cosets(p, {0, 1}, 3);
    REQUIRE(!pw.empty());
    CHECK(pw[0].word == "");
}

TEST_CASE("truncated length") {
    auto s = thrice_punctured_sphere();
    auto cls = enumerate_by_length(s, 7.0);
    REQUIRE(cls.size() > 50);
    auto c0 = cls.front();
    CHECK(c0.len_gamma == doctest::Approx(4 * std::acosh(std::exp(c0.len_trunc / 2))).epsilon(1e-12));
    CHECK(truncated_length(c0, s) == c0.len_trunc);

    // explicit horocycle crossings in the global picture
    for (std::size_t i = 0; i < cls.size(); i += 7) {
        const auto& c = cls[i];
        auto [a, b] = c.end_pair;
        Horoball h1 = horoball_image(chart(a), s.grading[a]);
        Horoball h2 = horoball_image(c.matrix * chart(b), s.grading[b]);
        CHECK(std::abs(horoball_gap(h1, h2) - c.len_trunc) <= 1e-9);
        CHECK(std::abs(c.len_gamma - gamma_length_from_trace(c, s)) <= 1e-12);
    }

    auto s4 = thrice_punctured_sphere({4, 4, 4});
    for (std::size_t i = 0; i < 20; ++i) CHECK(truncated_length(cls[i], s4) > truncated_length(cls[i], s));

    FuchsianSurface tangent = s;
    tangent.grading = {1, 1, 1};
    CHECK_THROWS_AS(truncated_length(c0, tangent), GeometryError);
}

TEST_CASE("concave core") {
    auto s = thrice_punctured_sphere();
    auto shortest = cusp_class_from_word(s, "", 0, 1);
    CHECK(in_concave_core(shortest, s));
    // arcs from inf to (AB^-1)^j(0), winding j times around the cusp at 1
    auto wind = [&](int j) { return cusp_class_from_word(s, free_power("Ab", j), 0, 1); };
    CHECK(wind(2).q == 3);
    CHECK(in_concave_core(wind(2), s));
    CHECK_FALSE(in_concave_core(wind(3), s));
    auto s1 = thrice_punctured_sphere({2, 2, 1});
    CHECK_FALSE(in_concave_core(wind(2), s1));

    auto cl = enumerate_by_length(s, 8.0);
    prime_sieve(cl, s);
    auto it = std::find_if(cl.begin(), cl.end(), [](const OrthoClass& c) { return c.flagged; });
    REQUIRE(it != cl.end());
    CHECK_THROWS_AS(in_concave_core(*it, s), AmbiguousGeometry);
}

TEST_CASE("composite words") {
    auto s = thrice_punctured_sphere();
    auto prime = cusp_class_from_word(s, "", 0, 1);
    auto two = composite_words(prime, s, 2, 100.0);
    CHECK(two.size() == 1);
    for (const auto& w : two) CHECK(canonical_word(w, 0, 0) == w);
    for (const auto& c : composite_classes(prime, s, 4, 12.0)) {
        CHECK(canonical_word(c.word, c.end_pair.first, c.end_pair.second) == c.word);
        bool in = false;
        try {
            in = in_concave_core(c, s);
        } catch (const AmbiguousGeometry&) {
        }
        if (in) CHECK(c.len_trunc > prime.len_trunc);
    }
    CHECK(composite_words(prime, s, 1, 100.0).empty());
}

TEST_CASE("prime sieve") {
    auto s = thrice_punctured_sphere();
    auto cl = enumerate_by_length(s, 9.0);
    auto st = prime_sieve(cl, s);
    CHECK(st.primes + st.composites + st.not_in_core + st.flagged == cl.size());
    auto first_in = std::find_if(cl.begin(), cl.end(), [](const OrthoClass& c) { return c.status != ClassStatus::not_in_core; });
    CHECK(first_in->status == ClassStatus::prime);
    CHECK(st.composites > 0);

    auto again = cl;
    auto st2 = prime_sieve(again, s);
    CHECK(st2.primes == st.primes);
    for (std::size_t i = 0; i < cl.size(); ++i) CHECK(again[i].status == cl[i].status);

    // double wind around the cusp at 0 on the shortest loop class
    auto dbl = cusp_class_from_word(s, "BBBB", 0, 0);
    auto comps = composite_words(cusp_class_from_word(s, "", 0, 1), s, 6, 20.0);
    CHECK(std::find(comps.begin(), comps.end(), dbl.word) == comps.end());
    CHECK_FALSE(in_concave_core(dbl, s));
}

TEST_CASE("model realization") {
    auto s = thrice_punctured_sphere();
    auto cl = enumerate_by_length(s, 6.0);
    prime_sieve(cl, s);
    std::size_t conclusive = 0;
    for (const auto& c : cl) {
        if (c.status == ClassStatus::not_in_core) continue;
        auto v = model_realization_check(c, s);
        if (v == ModelVerdict::inconclusive) continue;
        ++conclusive;
        CHECK((v == ModelVerdict::realizable) == (c.status == ClassStatus::prime));
    }
    CHECK(conclusive > 20);
    auto prime = cusp_class_from_word(s, "", 0, 1);
    CHECK(model_realization_check(prime, s) == ModelVerdict::realizable);
    auto two = composite_classes(prime, s, 2, 100.0);
    REQUIRE(two.size() == 1);
    for (const auto& c : two) CHECK(model_realization_check(c, s) == ModelVerdict::not_realizable);

    auto s3 = thrice_punctured_sphere({3, 3, 3});
    auto cl3 = enumerate_by_length(s3, 7.0);
    prime_sieve(cl3, s3);
    for (const auto& c : cl3)
        if (c.status == ClassStatus::prime) CHECK(model_realization_check(c, s3) != ModelVerdict::not_realizable);

    CHECK_THROWS_AS(model_realization_check(prime, thrice_punctured_sphere({2, 3, 3})), DomainError);
    CHECK(std::string(to_string(ModelVerdict::inconclusive)) == "inconclusive");
}

TEST_CASE("graded identity partial sums") {
    auto s = thrice_punctured_sphere();
    auto small = identity_partial_sum(s, {2, 2, 2}, 4.0);
    CHECK(small.partial_sum > 0);
    CHECK(small.partial_sum < pi * pi / 4);
    CHECK(small.rhs_value == doctest::Approx(pi * pi / 4).epsilon(1e-15));
    CHECK(small.ok());

    double prev_gap = 1e9;
    std::vector<OrthoClass> prev_rows;
    for (double depth : {6.0, 7.0, 8.0}) {
        auto r = identity_partial_sum(s, {2, 2, 2}, depth);
        CHECK(r.ok());
        CHECK(r.gap < prev_gap);
        CHECK(r.gap > 0);
        prev_gap = r.gap;
        double p = 0;
        for (const auto& row : r.rows) {
            CHECK(row.partial_sum >= p);
            p = row.partial_sum;
            CHECK(std::abs(row.cls.len_gamma - gamma_length_from_trunc(row.cls.len_trunc)) <= 1e-9);
            CHECK(row.term == phi(row.cls.len_trunc));
        }
        REQUIRE(r.rows.size() >= prev_rows.size());
        for (std::size_t i = 0; i < prev_rows.size(); ++i) {
            CHECK(r.rows[i].cls.word == prev_rows[i].word);
            CHECK(r.rows[i].cls.end_pair == prev_rows[i].end_pair);
        }
        prev_rows.clear();
        for (const auto& row : r.rows) prev_rows.push_back(row.cls);
    }
    auto a = identity_partial_sum(s, {2, 2, 2}, 8.0, {1});
    auto b = identity_partial_sum(s, {2, 2, 2}, 8.0, {3});
    CHECK(report_json(a) == report_json(b));
    CHECK_THROWS_AS(identity_partial_sum(s, {1, 1, 2}, 6.0), DomainError);
    CHECK_THROWS_AS(identity_partial_sum(pants_group(1, 1, 1), {2, 2, 2}, 6.0), DomainError);
}

TEST_CASE("bridgeman and basmajian on pants") {
    auto p = pants_group(2, 2, 2);
    auto br = bridgeman_sum(p, 12.0);
    auto bs = basmajian_sum(p, 12.0);
    REQUIRE(br.rows.size() >= 3);
    CHECK(br.rows[0].cls.len_trunc == doctest::Approx(br.rows[2].cls.len_trunc).epsilon(1e-12));
    CHECK(br.rows[3].cls.len_trunc > br.rows[2].cls.len_trunc + 1e-6);
    CHECK(br.ok());
    CHECK(bs.ok());
    CHECK(br.partial_sum <= pi * pi / 2);
    CHECK(br.partial_sum >= 0.95 * pi * pi / 2);
    CHECK(bs.rhs_value == 6.0);
    CHECK(bs.partial_sum <= 6.0);
    CHECK(bs.partial_sum >= 0.95 * 6.0);
    REQUIRE(br.rows.size() == bs.rows.size());
    for (std::size_t i = 0; i < br.rows.size(); ++i) {
        CHECK(br.rows[i].cls.word == bs.rows[i].cls.word);
        double ch = std::cosh(br.rows[i].cls.len_trunc / 2);
        CHECK(br.rows[i].term == doctest::Approx(br.rows[i].cls.multiplicity * rogers_L_real(1 / (ch * ch))).epsilon(1e-14));
    }
    auto br8 = bridgeman_sum(p, 8.0);
    CHECK(br8.partial_sum < br.partial_sum);
    // seams against the hexagon formula
    double c = std::cosh(1.0), sh = std::sinh(1.0);
    CHECK(br.rows[0].cls.len_trunc == doctest::Approx(std::acosh((c + c * c) / (sh * sh))).epsilon(1e-12));
    CHECK_THROWS_AS(bridgeman_sum(thrice_punctured_sphere(), 5.0), DomainError);

    auto q = pants_group(1, 1, 4);
    auto bq = basmajian_sum(q, 10.0);
    CHECK(bq.ok());
    CHECK(bq.rhs_value == 6.0);
}

TEST_CASE("counting bound") {
    auto s = thrice_punctured_sphere();
    auto r = identity_partial_sum(s, {2, 2, 2}, 8.0);
    REQUIRE(r.counting.size() > 3);
    CHECK(r.counting[0].count == 0);
    CHECK(r.counting[0].L < r.rows[0].cls.len_trunc);
    for (const auto& c : r.counting) {
        CHECK(c.ok);
        CHECK(static_cast<double>(c.count) <= c.bound_phi);
        CHECK(c.bound_phi <= c.bound_exp);
    }
    CHECK(r.counting.back().count == r.n_primes);
    for (double L = 0.05; L < 30; L += 0.05) {
        CHECK(pi * pi / 4 / phi(L) <= pi * pi * std::exp(L) / (L + 2));
    }
}

TEST_CASE("report serialization") {
    auto s = thrice_punctured_sphere();
    auto r = identity_partial_sum(s, {2, 2, 2}, 6.0);
    auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["schema_version"] == 1);
    CHECK(j["surface"] == "gamma2");
    CHECK(j["rhs"]["value"].get<double>() == r.rhs_value);
    CHECK(j["partial_sum"].get<double>() == r.partial_sum);
    CHECK(j["gap"].get<double>() == r.gap);
    CHECK(j["rows"].size() == r.rows.size());
    CHECK(j["rows"][0]["ends"].size() == 2);
    CHECK(j["rows"][1]["len_trunc"].get<double>() == r.rows[1].cls.len_trunc);
    CHECK(j["counting"].size() == r.counting.size());
    CHECK(j["n_primes"] == r.n_primes);
    CHECK(j["n_flagged"] == r.n_flagged);
    CHECK(j["ok"] == true);
    auto csv = report_csv(r);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.rows.size() + 1));
    CHECK(csv.rfind("word,end_a,end_b,len_trunc", 0) == 0);

    auto jp = nlohmann::json::parse(report_json(bridgeman_sum(pants_group(2, 2, 2), 6.0)));
    CHECK(jp["grading"][0] == "inf");
    CHECK(jp["rows"][0]["len_gamma"].is_null());
    CHECK(jp["rows"][0].contains("multiplicity"));
}

TEST_CASE("compensated summation") {
    NeumaierSum s;
    for (double x : {1.0, 1e100, 1.0, -1e100}) s.add(x);
    CHECK(s.value() == 2.0);
}
