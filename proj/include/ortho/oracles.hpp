#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ortho/errors.hpp"
#include "ortho/hgeom.hpp"

namespace ortho {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

struct QuadratureOptions {
    /// Relative to the L1 norm of the integrand.
    double tolerance = 1e-10;
    std::size_t max_evaluations = 4'000'000;
};

/// Int_{-inf}^0 Int_2^{2+2a} ln|(2+2a-x)(2-x)/((y-2)(2+2a-y))| / (y-x)^2 dy dx.
QuadratureResult lasso_cusp_integral(double a, const QuadratureOptions& opt = {});

/// I(a,b); the inner range [-1/y, -b] is oriented, so b >= 1 gives a signed value.
QuadratureResult lasso_cone_integral(double a, double b, const QuadratureOptions& opt = {});

/// Int_{r1}^{r2} ln(sin t) cot(t + delta) dt.
QuadratureResult f_delta_integral(double delta, double r1, double r2, const QuadratureOptions& opt = {});

struct SuiteReport {
    std::string name;
    std::size_t samples = 0;
    std::size_t passed = 0;
    std::size_t violations = 0;
    std::size_t skipped = 0;
    double worst_residual = 0.0;
    std::map<std::string, std::size_t> skip_reasons;
    std::vector<std::string> failures; // first few only
};

struct CheckReport {
    std::vector<SuiteReport> suites;
    bool ok() const;
};

struct SampleOutcome {
    enum Status { passed, failed, skipped } status;
    double residual;
    std::string detail; // failure description or skip reason
};

/// Point x at distance s along mu in the normalized quadrilateral with dist(mu, b) = delta:
/// direct angle and membership against outq_evaluate.
SampleOutcome check_outq(double delta, double s);
/// Crossing angle from the explicit intersection point against intersection_angle_cot2.
SampleOutcome check_cotphi(double x, double y, ExtReal c, ExtReal d);
/// Boundary derivative of the disk map of displacement ell at angle arg w - arg z.
SampleOutcome check_bilip(double ell, double angle);

/// Suite names accepted by sample_lemma_checks.
inline const std::vector<std::string>& lemma_suite_names() {
    static const std::vector<std::string> names{"outq", "cotphi", "bilip"};
    return names;
}

/// Randomized checks of the quadrilateral, crossing-angle and boundary-derivative lemmas.
/// Lengths are log-uniform in [0.1, 10]; angles and boundary points uniform.
CheckReport sample_lemma_checks(std::uint64_t seed, std::size_t count,
                                const std::vector<std::string>& suites = lemma_suite_names());

} // namespace ortho
