#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "harness.hpp"
#include "ortho/dilog.hpp"
#include "ortho/oracles.hpp"
#include "ortho/terms.hpp"

using namespace ortho;

namespace {

/// Exit codes.
enum Exit { kOk = 0, kInvariant = 1, kUsage = 2, kIo = 3 };

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text << std::flush;
        if (!std::cout) throw harness::IoError("cannot write to standard output");
    } else {
        harness::write_atomic(output, text);
    }
}

struct VerifyArgs {
    std::string surface;
    std::string grading = "2,2,2";
    std::string lengths = "2,2,2";
    std::string identity;
    double depth = 12.0;
    std::string format = "json";
    std::string output;
    int workers = 1;
};

int cmd_verify(const VerifyArgs& a) {
    harness::VerifyConfig cfg;
    cfg.surface = a.surface;
    cfg.identity = a.identity;
    cfg.grading = harness::parse_grading(a.grading);
    cfg.lengths = harness::parse_lengths(a.lengths);
    cfg.depth = a.depth;
    cfg.workers = a.workers;
    IdentityReport r = harness::run_verify(cfg);
    emit(a.format == "csv" ? report_csv(r) : report_json(r), a.output);
    if (!r.ok()) {
        for (const auto& d : r.diagnostics) std::cerr << "invariant: " << d << '\n';
        return kInvariant;
    }
    return kOk;
}

/// cusp[:k], geodesic:length[:k], cone:theta[:k].
BoundaryEnd parse_end(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    auto grade = [&](std::size_t i) {
        if (parts.size() <= i) return 1;
        auto g = harness::parse_grading(parts[i]);
        if (g.size() != 1) throw DomainError("bad grade in '" + text + "'");
        return g[0];
    };
    if (parts[0] == "cusp" && parts.size() <= 2) return BoundaryEnd::cusp(grade(1));
    if (parts[0] == "geodesic" && parts.size() >= 2 && parts.size() <= 3)
        return BoundaryEnd::geodesic(harness::parse_expr(parts[1]), grade(2));
    if (parts[0] == "cone" && parts.size() >= 2 && parts.size() <= 3)
        return BoundaryEnd::cone(harness::parse_expr(parts[1]), grade(2));
    throw DomainError("bad end '" + text + "'");
}

struct TermsArgs {
    bool phi = false, h = false, lasso_cone = false, lasso_cusp = false, br = false;
    bool cusp_cusp = false;
    std::string grid, lgamma, end_a, end_b, m, theta, mbar, sigma;
};

int cmd_terms(const TermsArgs& a) {
    int picked = a.phi + a.h + a.lasso_cone + a.lasso_cusp + a.br;
    if (picked != 1) throw DomainError("choose exactly one of --phi, --h, --lasso-cone, --lasso-cusp, --br");
    std::string out;
    if (a.phi) {
        if (a.grid.empty()) throw DomainError("--phi needs --grid");
        out = "L,phi,phi_decomposed,lower_bound\n";
        for (double L : harness::parse_grid(a.grid))
            out += num(L) + ',' + num(phi(L)) + ',' + num(phi_decomposed(L)) + ',' + num(phi_lower_bound(L)) + '\n';
    } else if (a.h) {
        if (a.lgamma.empty()) throw DomainError("--h needs --lgamma");
        BoundaryEnd ea, eb;
        if (a.cusp_cusp) {
            if (!a.end_a.empty() || !a.end_b.empty()) throw DomainError("--cusp-cusp excludes --end-a/--end-b");
            ea = eb = BoundaryEnd::cusp();
        } else {
            if (a.end_a.empty() || a.end_b.empty()) throw DomainError("--h needs --cusp-cusp or --end-a and --end-b");
            ea = parse_end(a.end_a);
            eb = parse_end(a.end_b);
        }
        TermValue tv = h_of_pants(pants_seams(ea, eb, harness::parse_expr(a.lgamma)));
        out = "part,multiplicity,value\n";
        for (const auto& p : tv.parts) out += p.label + ',' + std::to_string(p.multiplicity) + ',' + num(p.value) + '\n';
        out += "h,1," + num(tv.value) + '\n';
    } else if (a.lasso_cone) {
        if (a.m.empty() || a.theta.empty()) throw DomainError("--lasso-cone needs --m and --theta");
        double m = harness::parse_expr(a.m), th = harness::parse_expr(a.theta);
        auto [lo, hi] = cone_ab(m, th);
        double closed = lasso_cone(m, th);
        QuadratureOptions o;
        o.tolerance = 1e-9;
        auto q = lasso_cone_integral(lo, hi, o);
        out = "m,theta,a,b,closed,oracle,error_estimate,delta\n";
        out += num(m) + ',' + num(th) + ',' + num(lo) + ',' + num(hi) + ',' + num(closed) + ',' + num(q.value) + ',' +
               num(q.error_estimate) + ',' + num(std::abs(q.value - closed)) + '\n';
    } else if (a.lasso_cusp) {
        if (a.mbar.empty()) throw DomainError("--lasso-cusp needs --mbar");
        double m = harness::parse_expr(a.mbar);
        double closed = lasso_cusp(m);
        auto q = lasso_cusp_integral(std::exp(-m));
        out = "m_bar,closed,oracle,error_estimate,delta\n";
        out += num(m) + ',' + num(closed) + ',' + num(q.value) + ',' + num(q.error_estimate) + ',' +
               num(std::abs(q.value - closed)) + '\n';
    } else {
        if (a.sigma.empty() == a.grid.empty()) throw DomainError("--br needs exactly one of --sigma or --grid");
        std::vector<double> xs = a.grid.empty() ? std::vector<double>{harness::parse_expr(a.sigma)}
                                                : harness::parse_grid(a.grid);
        out = "sigma,br\n";
        for (double x : xs) out += num(x) + ',' + num(br_term(x)) + '\n';
    }
    emit(out, "");
    return kOk;
}

struct OracleArgs {
    std::string suite = "all";
    std::uint64_t seed = 0;
    long long count = 1000;
    double tol = -1.0;
    std::string output;
};

int cmd_oracle(const OracleArgs& a) {
    if (a.count <= 0) throw DomainError("--count must be positive");
    static const std::vector<std::string> integral{"lasso-cusp", "lasso-cone", "f-delta"};
    std::vector<std::string> suites;
    if (a.suite == "all") {
        suites = {"outq", "cotphi", "bilip", "lasso-cusp", "lasso-cone", "f-delta"};
    } else {
        suites = {a.suite};
    }
    bool ok = true;
    std::string csv;
    for (const auto& name : suites) {
        bool is_integral = std::find(integral.begin(), integral.end(), name) != integral.end();
        if (!is_integral) {
            auto rep = sample_lemma_checks(a.seed, static_cast<std::size_t>(a.count), {name});
            for (const auto& s : rep.suites) {
                bool pass = s.violations == 0 && (s.name != "cotphi" || s.worst_residual <= (a.tol > 0 ? a.tol : 1e-9));
                ok = ok && pass;
                std::cerr << s.name << ": samples " << s.samples << ", passed " << s.passed << ", skipped " << s.skipped
                          << ", violations " << s.violations << ", worst residual " << num(s.worst_residual) << " -> "
                          << (pass ? "pass" : "FAIL") << '\n';
                for (const auto& f : s.failures) std::cerr << "  " << f << '\n';
            }
            continue;
        }
        // quadrature suites are capped at their standard sample sizes when run under "all"
        std::size_t n = static_cast<std::size_t>(a.count);
        std::vector<harness::IntegralSample> rows;
        double tol;
        if (name == "lasso-cusp") {
            tol = a.tol > 0 ? a.tol : 1e-6;
            rows = harness::lasso_cusp_samples(a.seed, a.suite == "all" ? std::min<std::size_t>(n, 20) : n, tol);
        } else if (name == "lasso-cone") {
            tol = a.tol > 0 ? a.tol : 1e-5;
            rows = harness::lasso_cone_samples(a.seed, a.suite == "all" ? std::min<std::size_t>(n, 20) : n, tol);
        } else {
            tol = a.tol > 0 ? a.tol : 1e-8;
            rows = harness::f_delta_samples(a.seed, a.suite == "all" ? std::min<std::size_t>(n, 50) : n, tol);
        }
        double worst = 0.0;
        std::size_t bad = 0;
        for (const auto& r : rows) {
            worst = std::max(worst, r.delta);
            bad += !r.pass;
        }
        ok = ok && bad == 0;
        std::cerr << name << ": samples " << rows.size() << ", failures " << bad << ", worst delta " << num(worst)
                  << " (tol " << num(tol) << ") -> " << (bad ? "FAIL" : "pass") << '\n';
        if (a.suite != "all") csv = harness::samples_csv(rows);
    }
    if (!csv.empty()) emit(csv, a.output);
    std::cerr << (ok ? "pass" : "FAIL") << '\n';
    return ok ? kOk : kInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthospectrum identities: terms, enumeration and verification"};
    app.require_subcommand(1);

    VerifyArgs va;
    va.workers = harness::default_workers();
    auto* verify = app.add_subcommand("verify", "Partial sums of an identity over enumerated orthogeodesics");
    verify->add_option("--surface", va.surface, "gamma2 or pants")->required()->check(CLI::IsMember({"gamma2", "pants"}));
    verify->add_option("--grading", va.grading, "Grades for gamma2, e.g. 2,2,2");
    verify->add_option("--lengths", va.lengths, "Boundary lengths for pants, e.g. 2,2,2");
    verify->add_option("--identity", va.identity, "graded (gamma2), basmajian or bridgeman (pants)")
        ->check(CLI::IsMember({"graded", "basmajian", "bridgeman"}));
    auto* depth = verify->add_option("--depth", va.depth, "Cutoff on the truncated length (gamma2)");
    auto* mwl = verify->add_option("--max-word-len", va.depth, "Same cutoff as --depth");
    auto* mlen = verify->add_option("--max-len", va.depth, "Cutoff on the orthogeodesic length (pants)");
    depth->excludes(mwl)->excludes(mlen);
    mwl->excludes(mlen);
    verify->add_option("--format", va.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--output,-o", va.output, "Output file, written atomically; standard output if omitted");
    verify->add_option("--workers", va.workers, "Worker threads (default ORTHO_WORKERS or 1)")
        ->check(CLI::Range(1, 1024));

    TermsArgs ta;
    auto* terms = app.add_subcommand("terms", "Tabulate closed-form terms");
    terms->set_help_flag("--help", "Print this help message and exit");
    terms->add_flag("--phi", ta.phi, "Phi(L) over --grid");
    terms->add_flag("--h", ta.h, "h of the pants with the given ends and --lgamma");
    terms->add_flag("--lasso-cone", ta.lasso_cone, "Cone lasso at --m, --theta with the quadrature oracle");
    terms->add_flag("--lasso-cusp", ta.lasso_cusp, "Cusp lasso at --mbar with the quadrature oracle");
    terms->add_flag("--br", ta.br, "Bridgeman term at --sigma or over --grid");
    terms->add_flag("--cusp-cusp", ta.cusp_cusp, "Both ends are cusps of grade 1");
    terms->add_option("--grid", ta.grid, "start:stop:count");
    terms->add_option("--lgamma", ta.lgamma, "Length of gamma, e.g. 4asinh1");
    terms->add_option("--end-a", ta.end_a, "cusp[:k], geodesic:len[:k] or cone:theta[:k]");
    terms->add_option("--end-b", ta.end_b, "cusp[:k], geodesic:len[:k] or cone:theta[:k]");
    terms->add_option("--m", ta.m, "Distance to the cone point");
    terms->add_option("--theta", ta.theta, "Cone angle, e.g. pi/4");
    terms->add_option("--mbar", ta.mbar, "Truncated distance to the cusp collar");
    terms->add_option("--sigma", ta.sigma, "Seam length");

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "Run the independent oracle suites");
    oracle->add_option("--suite", oa.suite, "all, outq, cotphi, bilip, lasso-cusp, lasso-cone or f-delta")
        ->check(CLI::IsMember({"all", "outq", "cotphi", "bilip", "lasso-cusp", "lasso-cone", "f-delta"}));
    oracle->add_option("--seed", oa.seed, "Generator seed")->required();
    oracle->add_option("--count", oa.count, "Samples per suite");
    oracle->add_option("--tol", oa.tol, "Tolerance override");
    oracle->add_option("--output,-o", oa.output, "CSV output for a single quadrature suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(va);
        if (terms->parsed()) return cmd_terms(ta);
        if (oracle->parsed()) return cmd_oracle(oa);
    } catch (const harness::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariant;
    }
    return kUsage;
}
