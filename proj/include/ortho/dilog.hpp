#pragma once

#include <complex>

#include <boost/multiprecision/cpp_complex.hpp>

#include "ortho/errors.hpp"

namespace ortho {

using ComplexValue = std::complex<double>;
using ComplexExt = boost::multiprecision::cpp_complex_50;

/// Principal branch Li2(z). Throws DomainError for real z on (1, inf).
/// Inputs within 1e-14 of the cut take the limit from the side of sign(Im z).
ComplexValue dilog(ComplexValue z);

/// Rogers dilogarithm L(z) = Li2(z) + Log(z)Log(1-z)/2, principal branches.
/// Real z in [0,1] returns an exactly real value.
ComplexValue rogers_L(ComplexValue z);

/// Real Li2 for x <= 1.
double dilog_real(double x);

/// Real Rogers function for x <= 1; for x < 0 uses Li2(x) + ln|x| ln(1-x)/2.
double rogers_L_real(double x);

/// Extended precision (50 digits), for oracle comparisons.
ComplexExt dilog_ext(const ComplexExt& z);
ComplexExt rogers_L_ext(const ComplexExt& z);

} // namespace ortho
