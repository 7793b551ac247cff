#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ortho/dilog.hpp"
#include "ortho/spectra.hpp"

namespace ortho {

namespace {

constexpr double kPi = std::numbers::pi;

/// Reflection in the geodesic (u, v) as a determinant -1 matrix acting on z-bar.
MoebiusMap reflection_in(ExtReal u, ExtReal v) {
    if (u.is_inf()) std::swap(u, v);
    if (v.is_inf()) return {-1.0, 2.0 * u.v, 0.0, 1.0};
    double m = (u.v + v.v) / 2, r = std::abs(u.v - v.v) / 2;
    return {m / r, (r * r - m * m) / r, 1.0 / r, -m / r};
}

GeodesicUHP image(const MoebiusMap& m, const GeodesicUHP& g) { return {m.apply(g.p), m.apply(g.q)}; }

/// Right-angled hexagon: axis i is boundary i, seam i is the seam opposite boundary i.
struct PantsFrame {
    double len[3];
    double seam_len[3];
    GeodesicUHP axis[3] = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    GeodesicUHP seam[3] = {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    MoebiusMap refl[3];
};

PantsFrame pants_frame(const FuchsianSurface& s) {
    if (s.kind != SurfaceKind::pants) throw DomainError("pants surface required");
    PantsFrame f;
    double ch[3], sh[3];
    for (int i = 0; i < 3; ++i) {
        f.len[i] = s.boundary[i].end.param;
        ch[i] = std::cosh(f.len[i] / 2);
        sh[i] = std::sinh(f.len[i] / 2);
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        f.seam_len[i] = std::acosh((ch[i] + ch[j] * ch[k]) / (sh[j] * sh[k]));
    }
    double R = std::exp(f.len[0] / 2);
    f.axis[0] = {0.0, ExtReal::infinity()};
    f.seam[2] = {-1.0, 1.0};
    f.seam[1] = {-R, R};
    double t2 = std::tanh(f.seam_len[2] / 2), t1 = std::tanh(f.seam_len[1] / 2);
    f.axis[1] = {t2, 1.0 / t2};
    f.axis[2] = {R * t1, R / t1};
    f.refl[1] = reflection_in(f.seam[1].p, f.seam[1].q);
    f.refl[2] = reflection_in(f.seam[2].p, f.seam[2].q);
    MoebiusMap r1 = reflection_in(f.axis[1].p, f.axis[1].q), r2 = reflection_in(f.axis[2].p, f.axis[2].q);
    auto [u, v] = (r1 * r2).boundary_fixed_points();
    f.seam[0] = {u, v};
    f.refl[0] = reflection_in(u, v);
    return f;
}

struct PantsHit {
    std::string word;
    int a, x;
    double len;
    int oriented;
    MoebiusMap g;
};

/// Double cosets Stab_a \ W / Stab_x of the seam reflection group, starting from boundary a.
/// Words are empty or start with the reflection opposite a and end with the one opposite x.
void pants_walk(const PantsFrame& f, int a, double max_len, int max_word_len, const std::function<void(PantsHit)>& out) {
    for (int x = 0; x < 3; ++x)
        if (x != a) {
            double d = distance_between_geodesics(f.axis[a], f.axis[x]);
            if (d <= max_len) out({"", a, x, d, 1, MoebiusMap{}});
        }
    struct Node {
        std::string word;
        MoebiusMap m;
    };
    std::vector<Node> stack{{std::string(1, static_cast<char>('1' + a)), f.refl[a]}};
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        int j = n.word.back() - '1';
        if (distance_between_geodesics(f.axis[a], image(n.m, f.seam[j])) > max_len) continue;
        double d = distance_between_geodesics(f.axis[a], image(n.m, f.axis[j]));
        if (d <= max_len) {
            MoebiusMap g = n.word.size() % 2 ? n.m * f.refl[(j + 1) % 3] : n.m;
            out({n.word, a, j, d, 2, g});
        }
        if (static_cast<int>(n.word.size()) >= max_word_len) continue;
        for (int k = 2; k >= 0; --k)
            if (k != j) stack.push_back({n.word + static_cast<char>('1' + k), n.m * f.refl[k]});
    }
}

/// Unoriented classes; reversal pairs of loops from a to a are merged.
std::vector<OrthoClass> pants_classes(const FuchsianSurface& s, double max_len, int max_word_len,
                                      std::pair<int, int> only = {-1, -1}) {
    PantsFrame f = pants_frame(s);
    std::vector<OrthoClass> out;
    for (int a = 0; a < 3; ++a) {
        if (only.first >= 0 && a != std::min(only.first, only.second)) continue;
        pants_walk(f, a, max_len, max_word_len, [&](PantsHit h) {
            if (h.x < h.a) return;
            if (only.first >= 0 && h.x != std::max(only.first, only.second)) return;
            int mult = h.oriented;
            if (h.x == h.a) {
                std::string rev(h.word.rbegin(), h.word.rend());
                if (rev < h.word) return;
                if (rev == h.word) mult /= 2;
            }
            OrthoClass c;
            c.word = h.word;
            c.end_pair = {h.a, h.x};
            c.matrix = h.g;
            c.len_trunc = h.len;
            c.multiplicity = mult;
            c.status = ClassStatus::prime;
            out.push_back(std::move(c));
        });
    }
    std::sort(out.begin(), out.end(), [](const OrthoClass& x, const OrthoClass& y) {
        if (x.len_trunc != y.len_trunc) return x.len_trunc < y.len_trunc;
        if (x.word != y.word) return x.word < y.word;
        return x.end_pair < y.end_pair;
    });
    return out;
}

IdentityReport pants_report(const FuchsianSurface& s, double max_len, const std::string& identity) {
    if (!(max_len > 0.0)) throw DomainError(identity + "_sum: max_len must be positive");
    for (int k : s.grading)
        if (k != kInfiniteGrade) throw DomainError(identity + "_sum: all grades must be infinite");
    IdentityReport r;
    r.surface = s.id;
    r.identity = identity;
    r.grading = s.grading;
    r.euler_abs = s.euler_abs();
    r.depth = max_len;
    if (identity == "bridgeman") {
        r.rhs_formula = "pi^2/2*(2g+n-2)";
        r.rhs_value = kPi * kPi / 2 * r.euler_abs;
    } else {
        r.rhs_formula = "l1+l2+l3";
        for (const auto& b : s.boundary) r.rhs_value += b.end.param;
    }
    auto classes = pants_classes(s, max_len, 1 << 30);
    NeumaierSum acc;
    double prev = 0.0;
    std::size_t not_increasing = 0;
    for (auto& c : classes) {
        double ell = c.len_trunc, term;
        if (identity == "bridgeman") {
            double ch = std::cosh(ell / 2);
            term = c.multiplicity * rogers_L_real(1.0 / (ch * ch));
        } else {
            term = c.multiplicity * 4.0 * std::log1p(2.0 / std::expm1(ell));
        }
        acc.add(term);
        ReportRow row{c, term, acc.value()};
        if (!(row.partial_sum > prev)) ++not_increasing;
        prev = row.partial_sum;
        r.rows.push_back(std::move(row));
    }
    r.n_primes = r.rows.size();
    r.partial_sum = acc.value();
    r.gap = r.rhs_value - r.partial_sum;
    if (not_increasing)
        r.diagnostics.push_back("partial sums fail to increase at " + std::to_string(not_increasing) + " rows");
    if (r.partial_sum > r.rhs_value + 1e-9) r.diagnostics.push_back("partial sum exceeds the right-hand side");
    return r;
}

} // namespace

FuchsianSurface pants_group(double l1, double l2, double l3) {
    for (double l : {l1, l2, l3})
        if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("pants_group: boundary lengths must be positive");
    FuchsianSurface s;
    s.id = "pants";
    s.kind = SurfaceKind::pants;
    s.genus = 0;
    s.n = 3;
    s.boundary = {{BoundaryEnd::geodesic(l1, kInfiniteGrade), "X"},
                  {BoundaryEnd::geodesic(l2, kInfiniteGrade), "Y"},
                  {BoundaryEnd::geodesic(l3, kInfiniteGrade), "XY"}};
    PantsFrame f = pants_frame(s);
    s.generators = {{"X", f.refl[1] * f.refl[2]}, {"Y", f.refl[2] * f.refl[0]}};
    s = with_grading(std::move(s), {kInfiniteGrade, kInfiniteGrade, kInfiniteGrade});

    double worst = s.relation_residual();
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        worst = std::max(worst, std::abs(distance_between_geodesics(f.axis[j], f.axis[k]) - f.seam_len[i]));
        worst = std::max(worst, std::abs(distance_between_geodesics(f.seam[j], f.seam[k]) - f.len[i] / 2));
    }
    if (!(worst <= 1e-9)) throw GeometryError("pants_group: construction fails validation");
    return s;
}

std::vector<OrthoClass> enumerate_pants_words(const FuchsianSurface& s, std::pair<int, int> end_pair, int max_word_len) {
    auto [a, b] = end_pair;
    if (a < 0 || a > 2 || b < 0 || b > 2) throw DomainError("boundary index out of range");
    return pants_classes(s, std::numeric_limits<double>::infinity(), max_word_len, end_pair);
}

IdentityReport bridgeman_sum(const FuchsianSurface& pants, double max_len) {
    return pants_report(pants, max_len, "bridgeman");
}

IdentityReport basmajian_sum(const FuchsianSurface& pants, double max_len) {
    return pants_report(pants, max_len, "basmajian");
}

} // namespace ortho
