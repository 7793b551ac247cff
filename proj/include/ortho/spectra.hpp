#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ortho/errors.hpp"
#include "ortho/hgeom.hpp"

namespace ortho {

enum class SurfaceKind { thrice_punctured_sphere, pants };

struct SurfaceGenerator {
    std::string label;
    MoebiusMap map;
};

struct SurfaceBoundary {
    BoundaryEnd end;
    /// Word in the generator labels stabilizing a lift of this boundary element.
    std::string stabilizer;
};

struct FuchsianSurface {
    std::string id;
    SurfaceKind kind = SurfaceKind::thrice_punctured_sphere;
    std::vector<SurfaceGenerator> generators;
    std::vector<SurfaceBoundary> boundary;
    int genus = 0;
    int n = 0;
    std::vector<int> grading;

    /// 2g + n - 2.
    int euler_abs() const { return 2 * genus + n - 2; }
    /// Largest deviation of the defining relations (boundary traces, generator product).
    double relation_residual() const;
};

/// Empty string when admissible, otherwise the reason.
std::string grading_violation(const FuchsianSurface& s, const std::vector<int>& grading);
/// Copy of s with the given grading; DomainError if inadmissible.
FuchsianSurface with_grading(FuchsianSurface s, const std::vector<int>& grading);

/// Gamma(2) with A = [[1,2],[0,1]], B = [[1,0],[2,1]]; cusps at inf, 0, 1.
FuchsianSurface thrice_punctured_sphere(const std::vector<int>& grading = {2, 2, 2});
/// Pants with geodesic boundary of the given lengths, all grades infinite.
FuchsianSurface pants_group(double l1, double l2, double l3);

enum class ClassStatus { pending, prime, composite, not_in_core };

const char* to_string(ClassStatus s);

struct OrthoClass {
    /// Canonical double-coset word. Cusped surface: letters A, a = A^-1, B, b = B^-1.
    /// Pants: seam reflections 1, 2, 3.
    std::string word;
    std::pair<int, int> end_pair{0, 0};
    MoebiusMap matrix;
    double len_trunc = std::numeric_limits<double>::quiet_NaN();
    double len_gamma = std::numeric_limits<double>::quiet_NaN();
    ClassStatus status = ClassStatus::pending;
    /// A collar boundary touches the truncated segment.
    bool flagged = false;
    /// Unoriented orthogeodesics represented by this class.
    int multiplicity = 1;
    /// Cusped surface: the far endpoint is p/q in the chart where end_pair.first sits at inf.
    long long p = 0, q = 0;
};

/// Class of the arc from cusp a to the image of cusp b under the word; DomainError if the
/// word lies in a stabilizer double coset of the identity (a == b only).
OrthoClass cusp_class_from_word(const FuchsianSurface& s, const std::string& word, int a, int b);

/// Shortlex-least word of the double coset Stab_a w Stab_b (free group on A, B).
std::string canonical_word(const std::string& word, int a, int b);
std::string reduce_word(const std::string& word);
std::string inverse_word(const std::string& word);

/// Classes met by reduced words of length <= max_word_len, deduplicated and sorted by
/// (len_trunc, word). Pants: reflection words of length <= max_word_len.
std::vector<OrthoClass> enumerate_double_cosets(const FuchsianSurface& s, std::pair<int, int> end_pair,
                                                int max_word_len);

/// Every cusp-to-cusp class with len_trunc <= max_len_trunc, all end pairs, sorted.
std::vector<OrthoClass> enumerate_by_length(const FuchsianSurface& s, double max_len_trunc, int workers = 1);

double truncated_length(const OrthoClass& cls, const FuchsianSurface& s);
/// Length of the closed geodesic in the class of a^{k_a} g b^{k_b} g^-1, from the exact trace.
double gamma_length_from_trace(const OrthoClass& cls, const FuchsianSurface& s);
/// AmbiguousGeometry when a collar boundary touches the segment.
bool in_concave_core(const OrthoClass& cls, const FuchsianSurface& s);

/// Classes g p_b^{e1 k_b} g^-1 p_a^{e2 k_a} g ... with n = 2..n_max copies of g, all signs,
/// keeping those with len_trunc <= max_len_trunc. Duplicates removed.
std::vector<OrthoClass> composite_classes(const OrthoClass& prime, const FuchsianSurface& s, int n_max,
                                          double max_len_trunc);
std::vector<std::string> composite_words(const OrthoClass& prime, const FuchsianSurface& s, int n_max,
                                         double max_len_trunc);

struct SieveStats {
    std::size_t primes = 0, composites = 0, not_in_core = 0, flagged = 0;
};

/// Resolves statuses in input order (expected sorted by len_trunc). Composites are generated
/// from resolved primes up to the largest len_trunc in the input.
SieveStats prime_sieve(std::vector<OrthoClass>& classes, const FuchsianSurface& s);

enum class ModelVerdict { realizable, not_realizable, inconclusive };

const char* to_string(ModelVerdict v);

/// Develops the class in the (2k,2k,2k) triangle orbifold; uniform grading k >= 2 required.
ModelVerdict model_realization_check(const OrthoClass& cls, const FuchsianSurface& s);

struct ReportRow {
    OrthoClass cls;
    double term = 0.0;
    double partial_sum = 0.0;
};

struct CountingRow {
    double L = 0.0;
    std::size_t count = 0;
    double bound_phi = 0.0;
    double bound_exp = 0.0;
    bool ok = true;
};

struct IdentityReport {
    static constexpr int schema_version = 1;
    std::string surface;
    std::string identity; // graded, bridgeman, basmajian
    std::vector<int> grading;
    int euler_abs = 1;
    std::string rhs_formula;
    double rhs_value = 0.0;
    double depth = 0.0;
    std::size_t n_primes = 0, n_composites = 0, n_not_in_core = 0, n_flagged = 0;
    std::vector<ReportRow> rows;
    double partial_sum = 0.0;
    double gap = 0.0;
    std::vector<CountingRow> counting;
    /// Violated invariants; empty when the run is clean.
    std::vector<std::string> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

struct SumOptions {
    int workers = 1;
};

/// Sum of phi(len_trunc) over sieve-primes with len_trunc <= depth.
IdentityReport identity_partial_sum(const FuchsianSurface& s, const std::vector<int>& grading, double depth,
                                    const SumOptions& opt = {});
IdentityReport bridgeman_sum(const FuchsianSurface& pants, double max_len);
IdentityReport basmajian_sum(const FuchsianSurface& pants, double max_len);

/// Rows at every distinct prime length plus one below the shortest.
std::vector<CountingRow> counting_check(const IdentityReport& report);

/// Compensated (Neumaier) running sum.
class NeumaierSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0, comp_ = 0.0;
};

std::string report_json(const IdentityReport& r);
std::string report_csv(const IdentityReport& r);

} // namespace ortho
