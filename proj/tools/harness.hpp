#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ortho/spectra.hpp"

namespace ortho::harness {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arithmetic on numbers, pi, e and asinh/acosh/atanh/sinh/cosh/tanh/sin/cos/tan/log/exp/sqrt.
/// Juxtaposition multiplies and a function may take a bare number: "4asinh1", "pi/4".
double parse_expr(const std::string& text);

/// Comma-separated list; "inf" gives kInfiniteGrade.
std::vector<int> parse_grading(const std::string& text);
std::vector<double> parse_lengths(const std::string& text);

/// start:stop:count, endpoints included.
std::vector<double> parse_grid(const std::string& text);

struct VerifyConfig {
    std::string surface = "gamma2"; // gamma2 or pants
    std::string identity;           // graded, bridgeman, basmajian; empty picks the surface default
    std::vector<int> grading{2, 2, 2};
    std::vector<double> lengths{2, 2, 2};
    double depth = 12.0;
    int workers = 1;
};

IdentityReport run_verify(const VerifyConfig& cfg);

struct IntegralSample {
    std::vector<std::pair<std::string, double>> params;
    double closed = 0.0;
    double oracle = 0.0;
    double error_estimate = 0.0;
    double delta = 0.0;
    bool pass = false;
};

/// m_bar uniform in [0.1, 5].
std::vector<IntegralSample> lasso_cusp_samples(std::uint64_t seed, std::size_t count, double tol);
/// m uniform in [0.1, 5], theta uniform in (0, pi/2]; inadmissible draws are redrawn.
std::vector<IntegralSample> lasso_cone_samples(std::uint64_t seed, std::size_t count, double tol);
/// delta uniform in (-pi/2, pi/2), 0 <= r1 < r2 <= pi/2, -delta kept 0.05 away from [r1, r2].
std::vector<IntegralSample> f_delta_samples(std::uint64_t seed, std::size_t count, double tol);

std::string samples_csv(const std::vector<IntegralSample>& samples);

/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

/// ORTHO_WORKERS if set to a positive integer, otherwise 1.
int default_workers();

} // namespace ortho::harness
