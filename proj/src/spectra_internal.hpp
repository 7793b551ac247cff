#pragma once

#include <compare>
#include <string>
#include <vector>

#include "ortho/spectra.hpp"

namespace ortho::detail {

using i128 = __int128;

/// Exact integer 2x2 matrix.
struct IMat {
    i128 a = 1, b = 0, c = 0, d = 1;
};

inline IMat inv(const IMat& m) { return {m.d, -m.b, -m.c, m.a}; }
IMat mul(const IMat& x, const IMat& y);
IMat letter_matrix(char ch);
IMat word_matrix(const std::string& w);

/// Charts sending inf to the cusps inf, 0, 1.
inline const IMat kChart[3] = {{1, 0, 0, 1}, {0, -1, 1, 0}, {1, -1, 1, 0}};
inline const IMat kChartInv[3] = {{1, 0, 0, 1}, {0, 1, -1, 0}, {0, 1, -1, 1}};
/// Stabilizer generators of the cusps inf, 0, 1 in the free group on A, B.
inline const char* const kStab[3] = {"A", "B", "Ab"};

int std_type(i128 p, i128 q);
/// Cusp type of p/q seen in the chart of cusp a.
int cusp_type(int a, i128 p, i128 q);

/// Unoriented double-coset key: end pair and far endpoint p/q (p mod 2q) in the chart of a.
struct Key {
    int a, b;
    long long p, q;
    auto operator<=>(const Key&) const = default;
};

IMat complete_chart(int a, int b, long long p, long long q);
Key chart_key(int a, int b, IMat m);
Key class_key(const OrthoClass& c);
/// 0 leaves the core, 1 grazes a collar, 2 stays inside.
int in_core_exact(int a, long long p0, long long q0, const std::vector<int>& grading);

} // namespace ortho::detail
