#include "harness.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <unistd.h>

#include "ortho/oracles.hpp"
#include "ortho/terms.hpp"

namespace ortho::harness {

namespace {

constexpr double kPi = std::numbers::pi;

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    double run() {
        double v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (!std::isfinite(v)) fail("value is not finite");
        return v;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw DomainError("cannot parse '" + s_ + "': " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_primary() {
        char c = peek();
        return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '(';
    }

    double expr() {
        double v = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            double r = term();
            v = c == '+' ? v + r : v - r;
        }
        return v;
    }
    double term() {
        double v = unary();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                double r = unary();
                v = c == '*' ? v * r : v / r;
            } else if (starts_primary()) {
                v *= power();
            } else {
                return v;
            }
        }
    }
    double unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }
    double power() {
        double v = primary();
        if (peek() == '^') {
            ++pos_;
            v = std::pow(v, unary());
        }
        return v;
    }
    double primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            double v = expr();
            if (peek() != ')') fail("missing ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "pi") return kPi;
            if (name == "e") return std::numbers::e;
            static const std::map<std::string, double (*)(double)> funcs{
                {"asinh", [](double x) { return std::asinh(x); }}, {"acosh", [](double x) { return std::acosh(x); }},
                {"atanh", [](double x) { return std::atanh(x); }}, {"sinh", [](double x) { return std::sinh(x); }},
                {"cosh", [](double x) { return std::cosh(x); }},   {"tanh", [](double x) { return std::tanh(x); }},
                {"sin", [](double x) { return std::sin(x); }},     {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},     {"log", [](double x) { return std::log(x); }},
                {"exp", [](double x) { return std::exp(x); }},     {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            auto it = funcs.find(name);
            if (it == funcs.end()) fail("unknown name '" + name + "'");
            if (!starts_primary()) fail(name + " needs an argument");
            return it->second(power());
        }
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end");
    }
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

IntegralSample make_sample(std::vector<std::pair<std::string, double>> params, double closed,
                           const QuadratureResult& q, double tol) {
    IntegralSample s;
    s.params = std::move(params);
    s.closed = closed;
    s.oracle = q.value;
    s.error_estimate = q.error_estimate;
    s.delta = std::abs(q.value - closed);
    s.pass = s.delta <= tol;
    return s;
}

QuadratureOptions oracle_options(double tol) {
    QuadratureOptions o;
    o.tolerance = tol * 1e-3;
    return o;
}

} // namespace

double parse_expr(const std::string& text) { return ExprParser(text).run(); }

std::vector<int> parse_grading(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text, ',')) {
        if (item == "inf") {
            out.push_back(kInfiniteGrade);
            continue;
        }
        std::size_t used = 0;
        int k = 0;
        try {
            k = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw DomainError("bad grade '" + item + "'");
        }
        if (used != item.size()) throw DomainError("bad grade '" + item + "'");
        out.push_back(k);
    }
    return out;
}

std::vector<double> parse_lengths(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_expr(item));
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("grid must be start:stop:count");
    double a = parse_expr(parts[0]), b = parse_expr(parts[1]);
    double n = parse_expr(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7) throw DomainError("grid count must be a positive integer");
    std::size_t count = static_cast<std::size_t>(n);
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
}

IdentityReport run_verify(const VerifyConfig& cfg) {
    if (cfg.workers < 1) throw DomainError("workers must be positive");
    if (cfg.surface == "gamma2") {
        std::string id = cfg.identity.empty() ? "graded" : cfg.identity;
        if (id != "graded") throw DomainError("gamma2 supports the graded identity only");
        auto s = thrice_punctured_sphere(cfg.grading);
        return identity_partial_sum(s, cfg.grading, cfg.depth, {cfg.workers});
    }
    if (cfg.surface == "pants") {
        if (cfg.lengths.size() != 3) throw DomainError("pants needs three boundary lengths");
        auto p = pants_group(cfg.lengths[0], cfg.lengths[1], cfg.lengths[2]);
        std::string id = cfg.identity.empty() ? "basmajian" : cfg.identity;
        if (id == "basmajian") return basmajian_sum(p, cfg.depth);
        if (id == "bridgeman") return bridgeman_sum(p, cfg.depth);
        throw DomainError("pants supports basmajian and bridgeman");
    }
    throw DomainError("unknown surface '" + cfg.surface + "'");
}

std::vector<IntegralSample> lasso_cusp_samples(std::uint64_t seed, std::size_t count, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> um(0.1, 5.0);
    std::vector<IntegralSample> out;
    for (std::size_t i = 0; i < count; ++i) {
        double m = um(rng);
        auto q = lasso_cusp_integral(std::exp(-m), oracle_options(tol));
        out.push_back(make_sample({{"m_bar", m}}, lasso_cusp(m), q, tol));
    }
    return out;
}

std::vector<IntegralSample> lasso_cone_samples(std::uint64_t seed, std::size_t count, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> um(0.1, 5.0), ut(0.0, kPi / 2);
    std::vector<IntegralSample> out;
    while (out.size() < count) {
        double m = um(rng), th = kPi / 2 - ut(rng);
        if (!(std::cosh(m) * std::cos(th / 2) > 1.0)) continue;
        auto [a, b] = cone_ab(m, th);
        auto q = lasso_cone_integral(a, b, oracle_options(tol));
        out.push_back(make_sample({{"m", m}, {"theta", th}, {"a", a}, {"b", b}}, lasso_cone(m, th), q, tol));
    }
    return out;
}

std::vector<IntegralSample> f_delta_samples(std::uint64_t seed, std::size_t count, double tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(-kPi / 2, kPi / 2), ur(0.0, kPi / 2);
    std::vector<IntegralSample> out;
    while (out.size() < count) {
        double d = ud(rng), r1 = ur(rng), r2 = ur(rng);
        if (r1 > r2) std::swap(r1, r2);
        if (r2 - r1 < 1e-3 || std::abs(d) > kPi / 2 - 1e-3) continue;
        if (-d >= r1 - 0.05 && -d <= r2 + 0.05) continue;
        auto q = f_delta_integral(d, r1, r2, oracle_options(tol));
        out.push_back(make_sample({{"delta", d}, {"r1", r1}, {"r2", r2}}, f_delta(d, r1, r2), q, tol));
    }
    return out;
}

std::string samples_csv(const std::vector<IntegralSample>& samples) {
    std::ostringstream o;
    if (samples.empty()) return {};
    auto num = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    for (const auto& [name, v] : samples.front().params) o << name << ',';
    o << "closed,oracle,error_estimate,delta,pass\n";
    for (const auto& s : samples) {
        for (const auto& [name, v] : s.params) o << num(v) << ',';
        o << num(s.closed) << ',' << num(s.oracle) << ',' << num(s.error_estimate) << ',' << num(s.delta) << ','
          << (s.pass ? "true" : "false") << '\n';
    }
    return o.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    fs::path tmp = dir / ("." + target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename into " + path);
    }
}

int default_workers() {
    const char* env = std::getenv("ORTHO_WORKERS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
    return static_cast<int>(v);
}

} // namespace ortho::harness
