#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "ortho/spectra.hpp"
#include "ortho/terms.hpp"
#include "spectra_internal.hpp"

namespace ortho {

namespace detail {

IMat mul(const IMat& x, const IMat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

IMat letter_matrix(char ch) {
    switch (ch) {
    case 'A': return {1, 2, 0, 1};
    case 'a': return {1, -2, 0, 1};
    case 'B': return {1, 0, 2, 1};
    case 'b': return {1, 0, -2, 1};
    default: throw DomainError(std::string("unknown letter '") + ch + "'");
    }
}

IMat word_matrix(const std::string& w) {
    IMat m;
    for (char ch : w) m = mul(m, letter_matrix(ch));
    return m;
}

int std_type(i128 p, i128 q) {
    bool pe = p % 2 == 0, qe = q % 2 == 0;
    if (qe) return 0;
    if (pe) return 1;
    return 2;
}

int cusp_type(int a, i128 p, i128 q) {
    const IMat& c = kChart[a];
    return std_type(c.a * p + c.b * q, c.c * p + c.d * q);
}

} // namespace detail

using namespace detail;

namespace {

using ll = long long;

constexpr double kPi = std::numbers::pi;

i128 iabs(i128 x) { return x < 0 ? -x : x; }

/// Nearest integer to x / y; ties cannot occur for the parities used here.
i128 round_div(i128 x, i128 y) {
    i128 q = x / y;
    i128 r = x - q * y;
    if (2 * iabs(r) > iabs(y)) q += ((x < 0) != (y < 0)) ? -1 : 1;
    return q;
}

/// Reduced word for +-g, g in Gamma(2).
std::string decompose(const IMat& g) {
    i128 a = g.a, b = g.b, c = g.c, d = g.d;
    if (a % 2 == 0 || b % 2 != 0 || c % 2 != 0) throw std::logic_error("decompose: not in Gamma(2)");
    std::string w;
    auto emit = [&w](char up, char lo, i128 m) {
        for (i128 i = 0; i < iabs(m); ++i) w.push_back(m > 0 ? up : lo);
    };
    while (c != 0) {
        if (iabs(a) > iabs(c)) {
            i128 m = round_div(a, 2 * c);
            a -= 2 * m * c;
            b -= 2 * m * d;
            emit('A', 'a', m);
        } else {
            i128 m = round_div(c, 2 * a);
            c -= 2 * m * a;
            d -= 2 * m * b;
            emit('B', 'b', m);
        }
    }
    emit('A', 'a', b * a / 2);
    return w;
}

ll egcd(ll a, ll b, ll& x, ll& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return a < 0 ? -a : a;
    }
    ll x1, y1;
    ll g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

ll gcd_ll(ll a, ll b) {
    while (b) {
        ll t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

ll mod_pos(i128 x, i128 m) {
    i128 r = x % m;
    if (r < 0) r += m;
    return static_cast<ll>(r);
}

bool in_gamma2(const IMat& m) { return m.b % 2 == 0 && m.c % 2 == 0; }

IMat negate(const IMat& m) { return {-m.a, -m.b, -m.c, -m.d}; }

} // namespace

namespace detail {

/// Chart matrix with M(inf) = p/q and C_a M C_b^-1 in Gamma(2).
IMat complete_chart(int a, int b, ll p, ll q) {
    ll x, y;
    egcd(p, q, x, y);
    ll s = x, r = -y;
    for (int t = 0; t < 2; ++t) {
        IMat m{p, r + t * p, q, s + t * q};
        if (in_gamma2(mul(mul(kChart[a], m), kChartInv[b]))) return m;
    }
    throw std::logic_error("complete_chart: no Gamma(2) completion");
}

Key chart_key(int a, int b, IMat m) {
    if (m.c < 0) m = negate(m);
    if (m.c == 0) throw DomainError("class lies in a stabilizer");
    if (a == b) {
        ll x = mod_pos(m.a, 2 * m.c), y = mod_pos(-m.d, 2 * m.c);
        return {a, b, std::min(x, y), static_cast<ll>(m.c)};
    }
    if (a > b) {
        IMat i = inv(m);
        if (i.c < 0) i = negate(i);
        return {b, a, mod_pos(i.a, 2 * i.c), static_cast<ll>(i.c)};
    }
    return {a, b, mod_pos(m.a, 2 * m.c), static_cast<ll>(m.c)};
}

Key class_key(const OrthoClass& c) {
    if (c.q <= 0) throw DomainError("class has no cusp chart data");
    auto [a, b] = c.end_pair;
    return chart_key(a, b, complete_chart(a, b, c.p, c.q));
}

int in_core_exact(int a, ll p0, ll q0, const std::vector<int>& grading) {
    bool graze = false;
    for (ll q = 1; 2 * q <= q0 + 1; ++q) {
        ll f = static_cast<ll>((static_cast<i128>(p0) * q - mod_pos(static_cast<i128>(p0) * q, q0)) / q0);
        for (ll p = f - 1; p <= f + 2; ++p) {
            if (gcd_ll(p, q) != 1) continue;
            i128 cross = static_cast<i128>(p0) * q - static_cast<i128>(p) * q0;
            if (cross == 0) continue;
            int t = cusp_type(a, p, q);
            if (grading[t] == kInfiniteGrade) continue;
            i128 lhs = static_cast<i128>(2) * grading[t] * q * iabs(cross);
            if (lhs < q0) return 0;
            if (lhs == q0) graze = true;
        }
    }
    return graze ? 1 : 2;
}

} // namespace detail

namespace {

void require_cusped(const FuchsianSurface& s, const char* what) {
    if (s.kind != SurfaceKind::thrice_punctured_sphere)
        throw DomainError(std::string(what) + ": needs the thrice-punctured sphere");
}

void check_end(int a) {
    if (a < 0 || a > 2) throw DomainError("cusp index out of range");
}

char inverse_letter(char ch) {
    if (ch >= '1' && ch <= '3') return ch;
    if (std::isupper(static_cast<unsigned char>(ch))) return static_cast<char>(std::tolower(ch));
    return static_cast<char>(std::toupper(ch));
}

std::string word_power(const std::string& u, int m) {
    std::string base = m >= 0 ? u : inverse_word(u);
    std::string out;
    for (int i = 0; i < std::abs(m); ++i) out += base;
    return out;
}

bool shortlex_less(const std::string& x, const std::string& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
}

double grade_product(const std::vector<int>& k, int a, int b, ll q) {
    if (k[a] == kInfiniteGrade || k[b] == kInfiniteGrade) return std::numeric_limits<double>::infinity();
    return static_cast<double>(static_cast<i128>(k[a]) * k[b] * q * q);
}

MoebiusMap to_moebius(const IMat& m) {
    return {static_cast<double>(m.a), static_cast<double>(m.b), static_cast<double>(m.c), static_cast<double>(m.d)};
}

OrthoClass class_from_key(const FuchsianSurface& s, const Key& k) {
    IMat M = complete_chart(k.a, k.b, k.p, k.q);
    IMat g = mul(mul(kChart[k.a], M), kChartInv[k.b]);
    OrthoClass c;
    c.end_pair = {k.a, k.b};
    c.word = canonical_word(decompose(g), k.a, k.b);
    c.matrix = to_moebius(g);
    c.p = k.p;
    c.q = k.q;
    if (k.a == k.b) {
        IMat gi = inv(g);
        std::string w2 = canonical_word(decompose(gi), k.a, k.b);
        if (shortlex_less(w2, c.word)) {
            c.word = w2;
            c.matrix = to_moebius(gi);
            c.p = mod_pos(-M.d, 2 * M.c);
        }
    }
    c.len_trunc = std::log(grade_product(s.grading, k.a, k.b, k.q));
    c.len_gamma = gamma_length_from_trace(c, s);
    return c;
}

bool class_less(const OrthoClass& x, const OrthoClass& y) {
    if (x.len_trunc != y.len_trunc) return x.len_trunc < y.len_trunc;
    if (x.word != y.word) return x.word < y.word;
    return x.end_pair < y.end_pair;
}

/// Calls f(key) for every composite pattern with len_trunc <= budget.
template <class F>
void for_each_composite(const OrthoClass& prime, const std::vector<int>& K, int n_max, double budget, F&& f) {
    auto [a, b] = prime.end_pair;
    IMat m = complete_chart(a, b, prime.p, prime.q);
    IMat mi = inv(m);
    constexpr i128 kLimit = static_cast<i128>(1) << 100;
    int misses = 0;
    for (int n = 2; n <= n_max; ++n) {
        bool any = false;
        for (long e = 0; e < (1L << (n - 1)); ++e) {
            IMat h = m;
            int end = b;
            bool overflow = false;
            for (int j = 0; j < n - 1 && !overflow; ++j) {
                int sg = ((e >> j) & 1) ? -1 : 1;
                if (j % 2 == 0) {
                    h = mul(mul(h, IMat{1, static_cast<i128>(2) * sg * K[b], 0, 1}), mi);
                    end = a;
                } else {
                    h = mul(mul(h, IMat{1, static_cast<i128>(2) * sg * K[a], 0, 1}), m);
                    end = b;
                }
                overflow = iabs(h.a) > kLimit || iabs(h.b) > kLimit || iabs(h.c) > kLimit || iabs(h.d) > kLimit;
            }
            if (overflow || h.c == 0) continue;
            double len = std::log(static_cast<double>(K[a]) * K[end]) + 2.0 * std::log(static_cast<double>(iabs(h.c)));
            if (len <= budget) {
                any = true;
                f(chart_key(a, end, h));
            }
        }
        misses = any ? 0 : misses + 1;
        if (misses >= 2) break;
    }
}

} // namespace

std::string reduce_word(const std::string& word) {
    std::string out;
    for (char ch : word) {
        bool ok = ch == 'A' || ch == 'a' || ch == 'B' || ch == 'b' || (ch >= '1' && ch <= '3');
        if (!ok) throw DomainError(std::string("reduce_word: unknown letter '") + ch + "'");
        if (!out.empty() && out.back() == inverse_letter(ch))
            out.pop_back();
        else
            out.push_back(ch);
    }
    return out;
}

std::string inverse_word(const std::string& word) {
    std::string out(word.rbegin(), word.rend());
    for (char& ch : out) ch = inverse_letter(ch);
    return out;
}

std::string canonical_word(const std::string& word, int a, int b) {
    check_end(a);
    check_end(b);
    const std::string ua = kStab[a], ub = kStab[b];
    std::string cur = reduce_word(word);
    for (bool changed = true; changed;) {
        changed = false;
        for (int m : {1, -1}) {
            std::string l = reduce_word(word_power(ua, m) + cur);
            if (l.size() < cur.size()) {
                cur = l;
                changed = true;
            }
            std::string r = reduce_word(cur + word_power(ub, m));
            if (r.size() < cur.size()) {
                cur = r;
                changed = true;
            }
        }
    }
    std::string best = cur;
    int K = cur.size() <= 6 ? static_cast<int>(cur.size()) + 3 : 2;
    for (int m1 = -K; m1 <= K; ++m1)
        for (int m2 = -K; m2 <= K; ++m2) {
            std::string cand = reduce_word(word_power(ua, m1) + cur + word_power(ub, m2));
            if (shortlex_less(cand, best)) best = cand;
        }
    return best;
}

const char* to_string(ClassStatus s) {
    switch (s) {
    case ClassStatus::pending: return "pending";
    case ClassStatus::prime: return "prime";
    case ClassStatus::composite: return "composite";
    case ClassStatus::not_in_core: return "not_in_core";
    }
    return "?";
}

std::string grading_violation(const FuchsianSurface& s, const std::vector<int>& k) {
    if (k.size() != s.boundary.size()) return "grading must have one grade per boundary element";
    bool has_collar = false;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 1) return "grades must be positive integers or infinite";
        const BoundaryEnd& e = s.boundary[i].end;
        double bound = k[i] == kInfiniteGrade ? 0.0 : kPi / k[i];
        if (e.kind == EndKind::cone && e.param > bound * (1 + 1e-15)) return "cone angle exceeds pi/k";
        if (e.kind == EndKind::geodesic) has_collar = true;
        if (e.kind == EndKind::cusp && k[i] != kInfiniteGrade) has_collar = true;
        if (e.kind == EndKind::cone && e.param < bound) has_collar = true;
    }
    if (!has_collar) return "no collar and no geodesic boundary";
    if (s.genus == 0 && s.n == 3 && std::count(k.begin(), k.end(), 1) >= 2)
        return "pants graded by a permutation of (1,1,m)";
    return {};
}

FuchsianSurface with_grading(FuchsianSurface s, const std::vector<int>& grading) {
    std::string why = grading_violation(s, grading);
    if (!why.empty()) throw DomainError("inadmissible grading: " + why);
    s.grading = grading;
    for (std::size_t i = 0; i < grading.size(); ++i) s.boundary[i].end.grade = grading[i];
    return s;
}

double FuchsianSurface::relation_residual() const {
    auto eval = [this](const std::string& w) {
        MoebiusMap m;
        for (char ch : w) {
            char up = static_cast<char>(std::toupper(ch));
            auto it = std::find_if(generators.begin(), generators.end(),
                                   [up](const SurfaceGenerator& g) { return g.label == std::string(1, up); });
            if (it == generators.end()) throw DomainError("relation_residual: unknown generator");
            m = m * (ch == up ? it->map : it->map.inverse());
        }
        return m;
    };
    double worst = 0.0;
    for (const auto& g : generators) worst = std::max(worst, std::abs(g.map.det() - 1.0));
    for (const auto& b : boundary) {
        double expect = b.end.kind == EndKind::geodesic ? 2.0 * std::cosh(b.end.param / 2)
                        : b.end.kind == EndKind::cusp   ? 2.0
                                                        : 2.0 * std::cos(b.end.param / 2);
        double tr = std::abs(eval(b.stabilizer).trace());
        worst = std::max(worst, std::abs(tr - expect) / std::max(1.0, expect));
    }
    return worst;
}

FuchsianSurface thrice_punctured_sphere(const std::vector<int>& grading) {
    FuchsianSurface s;
    s.id = "gamma2";
    s.kind = SurfaceKind::thrice_punctured_sphere;
    s.generators = {{"A", {1, 2, 0, 1}}, {"B", {1, 0, 2, 1}}};
    s.boundary = {{BoundaryEnd::cusp(), "A"}, {BoundaryEnd::cusp(), "b"}, {BoundaryEnd::cusp(), "Ba"}};
    s.genus = 0;
    s.n = 3;
    return with_grading(std::move(s), grading);
}

OrthoClass cusp_class_from_word(const FuchsianSurface& s, const std::string& word, int a, int b) {
    require_cusped(s, "cusp_class_from_word");
    check_end(a);
    check_end(b);
    IMat M = mul(mul(kChartInv[a], word_matrix(reduce_word(word))), kChart[b]);
    if (M.c == 0) throw DomainError("cusp_class_from_word: word lies in the stabilizer double coset");
    return class_from_key(s, chart_key(a, b, M));
}

double truncated_length(const OrthoClass& cls, const FuchsianSurface& s) {
    require_cusped(s, "truncated_length");
    auto [a, b] = cls.end_pair;
    double prod = grade_product(s.grading, a, b, cls.q);
    if (cls.q <= 0) throw DomainError("truncated_length: class has no cusp chart data");
    if (!(prod > 1.0)) throw GeometryError("truncated_length: collar horoballs touch or overlap");
    return std::log(prod);
}

double gamma_length_from_trace(const OrthoClass& cls, const FuchsianSurface& s) {
    require_cusped(s, "gamma_length_from_trace");
    auto [a, b] = cls.end_pair;
    const auto& K = s.grading;
    if (K[a] == kInfiniteGrade || K[b] == kInfiniteGrade) return std::numeric_limits<double>::infinity();
    IMat M = complete_chart(a, b, cls.p, cls.q);
    IMat h = mul(mul(mul(IMat{1, static_cast<i128>(2) * K[a], 0, 1}, M), IMat{1, static_cast<i128>(2) * K[b], 0, 1}),
                 inv(M));
    double tr = static_cast<double>(iabs(h.a + h.d));
    if (!(tr > 2.0)) throw GeometryError("gamma_length_from_trace: loop is not hyperbolic");
    return 2.0 * std::acosh(tr / 2);
}

bool in_concave_core(const OrthoClass& cls, const FuchsianSurface& s) {
    require_cusped(s, "in_concave_core");
    if (cls.q <= 0) throw DomainError("in_concave_core: class has no cusp chart data");
    int st = in_core_exact(cls.end_pair.first, cls.p, cls.q, s.grading);
    if (st == 1) throw AmbiguousGeometry("in_concave_core: a collar boundary touches the truncated segment");
    return st == 2;
}

std::vector<OrthoClass> enumerate_pants_words(const FuchsianSurface& s, std::pair<int, int> end_pair, int max_word_len);

std::vector<OrthoClass> enumerate_double_cosets(const FuchsianSurface& s, std::pair<int, int> end_pair,
                                                int max_word_len) {
    if (max_word_len < 1) throw DomainError("enumerate_double_cosets: max_word_len must be >= 1");
    if (s.kind == SurfaceKind::pants) return enumerate_pants_words(s, end_pair, max_word_len);
    auto [a, b] = end_pair;
    check_end(a);
    check_end(b);
    std::set<Key> keys;
    const char letters[4] = {'A', 'a', 'B', 'b'};
    auto visit = [&](auto&& self, const IMat& g, char last, int len) -> void {
        IMat M = mul(mul(kChartInv[a], g), kChart[b]);
        if (M.c != 0) keys.insert(chart_key(a, b, M));
        if (len == max_word_len) return;
        for (char ch : letters) {
            if (last && ch == inverse_letter(last)) continue;
            self(self, mul(g, letter_matrix(ch)), ch, len + 1);
        }
    };
    visit(visit, IMat{}, 0, 0);
    std::vector<OrthoClass> out;
    out.reserve(keys.size());
    for (const Key& k : keys) out.push_back(class_from_key(s, k));
    std::sort(out.begin(), out.end(), class_less);
    return out;
}

std::vector<OrthoClass> enumerate_by_length(const FuchsianSurface& s, double max_len_trunc, int workers) {
    require_cusped(s, "enumerate_by_length");
    for (int k : s.grading)
        if (k == kInfiniteGrade) throw DomainError("enumerate_by_length: infinite grades are not enumerated");
    workers = std::max(1, workers);
    struct Task {
        int a, b;
        ll q;
    };
    std::vector<Task> tasks;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            for (ll q = 1;; ++q) {
                if (std::log(grade_product(s.grading, a, b, q)) > max_len_trunc) break;
                tasks.push_back({a, b, q});
            }
    std::vector<std::vector<OrthoClass>> parts(workers);
    auto run = [&](int w) {
        for (std::size_t i = w; i < tasks.size(); i += workers) {
            auto [a, b, q] = tasks[i];
            for (ll p = 0; p < 2 * q; ++p) {
                if (gcd_ll(p, q) != 1 || cusp_type(a, p, q) != b) continue;
                Key k = chart_key(a, b, complete_chart(a, b, p, q));
                if (k.p != p) continue;
                parts[w].push_back(class_from_key(s, k));
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::vector<OrthoClass> out;
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
    std::sort(out.begin(), out.end(), class_less);
    return out;
}

std::vector<OrthoClass> composite_classes(const OrthoClass& prime, const FuchsianSurface& s, int n_max,
                                          double max_len_trunc) {
    require_cusped(s, "composite_classes");
    if (n_max < 2) return {};
    std::set<Key> keys;
    for_each_composite(prime, s.grading, std::min(n_max, 40), max_len_trunc, [&](const Key& k) { keys.insert(k); });
    std::vector<OrthoClass> out;
    for (const Key& k : keys) out.push_back(class_from_key(s, k));
    std::sort(out.begin(), out.end(), class_less);
    return out;
}

std::vector<std::string> composite_words(const OrthoClass& prime, const FuchsianSurface& s, int n_max,
                                         double max_len_trunc) {
    std::vector<std::string> out;
    for (const auto& c : composite_classes(prime, s, n_max, max_len_trunc)) out.push_back(c.word);
    return out;
}

SieveStats prime_sieve(std::vector<OrthoClass>& classes, const FuchsianSurface& s) {
    SieveStats st;
    if (s.kind == SurfaceKind::pants) {
        for (auto& c : classes) c.status = ClassStatus::prime;
        st.primes = classes.size();
        return st;
    }
    double budget = 0.0;
    for (const auto& c : classes) budget = std::max(budget, c.len_trunc);
    std::set<Key> composites;
    for (auto& c : classes) {
        c.flagged = false;
        int core = in_core_exact(c.end_pair.first, c.p, c.q, s.grading);
        if (core == 0) {
            c.status = ClassStatus::not_in_core;
            ++st.not_in_core;
            continue;
        }
        Key k = class_key(c);
        if (composites.count(k)) {
            c.status = ClassStatus::composite;
            ++st.composites;
            continue;
        }
        if (core == 1) {
            c.status = ClassStatus::pending;
            c.flagged = true;
            ++st.flagged;
            continue;
        }
        c.status = ClassStatus::prime;
        ++st.primes;
        for_each_composite(c, s.grading, 40, budget, [&](const Key& ck) { composites.insert(ck); });
    }
    return st;
}

void NeumaierSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

IdentityReport identity_partial_sum(const FuchsianSurface& s0, const std::vector<int>& grading, double depth,
                                    const SumOptions& opt) {
    require_cusped(s0, "identity_partial_sum");
    if (!(depth > 0.0)) throw DomainError("identity_partial_sum: depth must be positive");
    FuchsianSurface s = with_grading(s0, grading);
    for (int k : grading)
        if (k == kInfiniteGrade) throw DomainError("identity_partial_sum: infinite grades are not supported");

    IdentityReport r;
    r.surface = s.id;
    r.identity = "graded";
    r.grading = grading;
    r.euler_abs = s.euler_abs();
    r.rhs_formula = "pi^2/4*(2g+n-2)";
    r.rhs_value = kPi * kPi / 4 * r.euler_abs;
    r.depth = depth;

    auto classes = enumerate_by_length(s, depth, opt.workers);
    SieveStats st = prime_sieve(classes, s);
    r.n_primes = st.primes;
    r.n_composites = st.composites;
    r.n_not_in_core = st.not_in_core;
    r.n_flagged = st.flagged;

    NeumaierSum acc;
    double prev = 0.0;
    std::size_t bad_gamma = 0, bad_monotone = 0;
    for (auto& c : classes) {
        if (c.status != ClassStatus::prime) continue;
        double term = phi(c.len_trunc);
        acc.add(term);
        ReportRow row{c, term, acc.value()};
        if (std::abs(c.len_gamma - gamma_length_from_trunc(c.len_trunc)) > 1e-9) ++bad_gamma;
        if (row.partial_sum < prev) ++bad_monotone;
        prev = row.partial_sum;
        r.rows.push_back(std::move(row));
    }
    r.partial_sum = acc.value();
    r.gap = r.rhs_value - r.partial_sum;
    r.counting = counting_check(r);

    if (bad_monotone) r.diagnostics.push_back("partial sums decrease at " + std::to_string(bad_monotone) + " rows");
    if (r.partial_sum > r.rhs_value + 1e-9) r.diagnostics.push_back("partial sum exceeds the right-hand side");
    if (bad_gamma)
        r.diagnostics.push_back(std::to_string(bad_gamma) + " rows fail the trace-vs-truncation check");
    std::size_t bad_count = 0;
    for (const auto& c : r.counting) bad_count += !c.ok;
    if (bad_count) r.diagnostics.push_back(std::to_string(bad_count) + " counting rows exceed the bound");
    return r;
}

} // namespace ortho
