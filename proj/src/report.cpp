#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ortho/spectra.hpp"
#include "ortho/terms.hpp"

namespace ortho {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_num(double x) { return std::isfinite(x) ? num(x) : std::string(); }

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out + "\"";
}

std::string grade(int k) { return k == kInfiniteGrade ? "\"inf\"" : std::to_string(k); }

} // namespace

std::vector<CountingRow> counting_check(const IdentityReport& r) {
    std::vector<CountingRow> out;
    if (r.identity != "graded" || r.rows.empty()) return out;
    double chi = r.euler_abs;
    auto make = [&](double L, std::size_t count) {
        CountingRow c;
        c.L = L;
        c.count = count;
        c.bound_phi = kPi * kPi / 4 * chi / phi(L);
        c.bound_exp = kPi * kPi * chi * std::exp(L) / (L + 2);
        c.ok = static_cast<double>(count) <= c.bound_phi && c.bound_phi <= c.bound_exp * (1 + 1e-12);
        return c;
    };
    out.push_back(make(r.rows.front().cls.len_trunc / 2, 0));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        double L = r.rows[i].cls.len_trunc;
        if (i + 1 < r.rows.size() && r.rows[i + 1].cls.len_trunc == L) continue;
        out.push_back(make(L, i + 1));
    }
    return out;
}

std::string report_json(const IdentityReport& r) {
    std::ostringstream o;
    o << "{\n";
    o << "  \"schema_version\": " << IdentityReport::schema_version << ",\n";
    o << "  \"surface\": " << quote(r.surface) << ",\n";
    o << "  \"identity\": " << quote(r.identity) << ",\n";
    o << "  \"grading\": [";
    for (std::size_t i = 0; i < r.grading.size(); ++i) o << (i ? ", " : "") << grade(r.grading[i]);
    o << "],\n";
    o << "  \"rhs\": {\"formula\": " << quote(r.rhs_formula) << ", \"value\": " << num(r.rhs_value) << "},\n";
    o << "  \"depth\": " << num(r.depth) << ",\n";
    o << "  \"n_primes\": " << r.n_primes << ",\n";
    o << "  \"n_composites\": " << r.n_composites << ",\n";
    o << "  \"n_not_in_core\": " << r.n_not_in_core << ",\n";
    o << "  \"n_flagged\": " << r.n_flagged << ",\n";
    o << "  \"partial_sum\": " << num(r.partial_sum) << ",\n";
    o << "  \"gap\": " << num(r.gap) << ",\n";
    o << "  \"ok\": " << (r.ok() ? "true" : "false") << ",\n";
    o << "  \"diagnostics\": [";
    for (std::size_t i = 0; i < r.diagnostics.size(); ++i) o << (i ? ", " : "") << quote(r.diagnostics[i]);
    o << "],\n";
    o << "  \"rows\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        const auto& c = row.cls;
        o << (i ? ",\n    " : "\n    ") << "{\"word\": " << quote(c.word) << ", \"ends\": [" << c.end_pair.first
          << ", " << c.end_pair.second << "], \"len_trunc\": " << num(c.len_trunc)
          << ", \"len_gamma\": " << num(c.len_gamma) << ", \"term\": " << num(row.term);
        if (r.identity != "graded") o << ", \"multiplicity\": " << c.multiplicity;
        o << "}";
    }
    o << (r.rows.empty() ? "],\n" : "\n  ],\n");
    o << "  \"counting\": [";
    for (std::size_t i = 0; i < r.counting.size(); ++i) {
        const auto& c = r.counting[i];
        o << (i ? ",\n    " : "\n    ") << "{\"L\": " << num(c.L) << ", \"count\": " << c.count
          << ", \"bound_phi\": " << num(c.bound_phi) << ", \"bound_exp\": " << num(c.bound_exp) << "}";
    }
    o << (r.counting.empty() ? "]\n" : "\n  ]\n");
    o << "}\n";
    return o.str();
}

std::string report_csv(const IdentityReport& r) {
    std::ostringstream o;
    o << "word,end_a,end_b,len_trunc,len_gamma,term,partial_sum,multiplicity\n";
    for (const auto& row : r.rows) {
        const auto& c = row.cls;
        o << c.word << ',' << c.end_pair.first << ',' << c.end_pair.second << ',' << csv_num(c.len_trunc) << ','
          << csv_num(c.len_gamma) << ',' << csv_num(row.term) << ',' << csv_num(row.partial_sum) << ','
          << c.multiplicity << '\n';
    }
    return o.str();
}

} // namespace ortho
