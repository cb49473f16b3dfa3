#pragma once

// Operator classes, conjugations, the Aluthge transform, and one experiment
// harness per structural result about W_q. Inclusions between convex sets
// are tested through support functions: K1 is inside K2 iff h1 <= h2 in
// every direction, and the hull of a union has the pointwise max as support.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnr/matcore.hpp"
#include "qnr/qrange.hpp"

namespace qnr {

bool is_normal(const CMat& t, double tol = 1e-10);
/// T^*T - TT^* positive semidefinite within tol |T|^2.
bool is_hyponormal(const CMat& t, double tol = 1e-10);

/// Antilinear conjugation C x = u conj(x) with u unitary and u = u^T.
struct ConjugationSpec {
    CMat u;

    /// Validates unitarity and symmetry (1e-10); throws InvalidArgument.
    static ConjugationSpec from_matrix(CMat u);
    /// Reverses coordinates: C(x_1, ..., x_n) = (conj x_n, ..., conj x_1).
    static ConjugationSpec swap(std::size_t n);
    /// Entrywise conjugation.
    static ConjugationSpec standard(std::size_t n);
};

CVec conjugation_apply(const ConjugationSpec& c, std::span<const Complex> v);
/// Matrix of the linear map C A C, i.e. u conj(A) conj(u).
CMat conjugate_operator(const ConjugationSpec& c, const CMat& a);
/// |T - C T^* C| <= tol |T|.
bool is_complex_symmetric(const CMat& t, const ConjugationSpec& c, double tol = 1e-10);
/// |T - C T^* C| itself.
double complex_symmetry_defect(const CMat& t, const ConjugationSpec& c);

/// |T|^{1/2} U |T|^{1/2} from the polar decomposition.
CMat aluthge(const CMat& t);
/// Same product with a caller-supplied isometric factor.
CMat aluthge_with(const CMat& t, const CMat& isometry);
/// A unitary that agrees with the polar isometry on range|T| and maps ker|T|
/// onto the orthogonal complement of its range.
CMat unitary_extension(const PolarParts& p);

enum class TheoremId { T1, T2, T3, T4, T5, T6 };
std::string_view to_string(TheoremId id);

struct TheoremReport {
    TheoremId id{};
    bool premises_ok = false;
    bool conclusion_ok = false;
    std::vector<std::pair<std::string, double>> metrics;
    std::string notes;

    /// Value of a named metric; throws InvalidArgument when absent.
    double metric(std::string_view name) const;
};

struct HarnessOptions {
    TableOptions table{};
    SphereOptions sphere{};
    int samples = 256;  // random admissible pairs added to each range
    std::uint64_t seed = 0x4a11;
};

/// Normal T with 0 in W_q(T): interiority margin min_theta h(theta).
TheoremReport check_thm1(const CMat& t, Complex q, int n_theta, const HarnessOptions& opt = {});

/// Inclusion of W_q(T) in every e^{i phi} W_{conj(q) e^{-i phi}}(T^*), phi on
/// the same grid as theta; at q = 0 also the circularity defect of W_0(T).
/// Throws PremiseFailed unless T is complex symmetric under c.
TheoremReport check_thm2(const CMat& t, const ConjugationSpec& c, Complex q, int n_theta,
                         const HarnessOptions& opt = {});

/// Hyponormal T similar to T^* through X with 0 outside W_q(X^{-1}).
/// Conclusion metrics |T - T^*| and sup |Im w| over W_q(T). Throws SingularX
/// when sigma_min(X) <= 1e-10.
TheoremReport check_thm3(const CMat& t, const CMat& x, Complex q, int n_theta = 360,
                         const HarnessOptions& opt = {});

/// Diagonal truncations T_n = diag(l_1, ..., l_n) embedded with trailing
/// zeros in a common space of dimension max(dims) + 1, compared with the
/// largest truncation. Metrics per n: dH_<n>, lipschitz_<n> (dH over
/// (2/|q|) |T_n - T_N|), and, for q = 1/2, witness_<n>, the value of the
/// pair x = (1/2, .., sqrt3/2 at n), y = (-1/2, .., sqrt3/2 at n).
TheoremReport run_convergence(const std::vector<Complex>& eigenvalues, Complex q, const std::vector<int>& dims,
                              int n_theta = 360, const HarnessOptions& opt = {});

/// Aluthge inclusion: support of W_q(T~) against max(h_T, h_T*), plus the
/// radius comparison and the reflection defect max |h(theta) - h(-theta)|.
TheoremReport check_thm5(const CMat& t, Complex q, int n_theta, const HarnessOptions& opt = {});

/// Random K with |K| = eps per (seed, eps). Metrics: max forward deficit
/// minus |K|, max dH minus (2/|q|)|K|, and the worst ratio dH / |K|.
/// Throws QZero when q = 0.
TheoremReport run_perturbation(const CMat& t, Complex q, const std::vector<std::uint64_t>& seeds,
                               const std::vector<double>& eps_grid, int n_theta = 180,
                               const HarnessOptions& opt = {});

}  // namespace qnr
