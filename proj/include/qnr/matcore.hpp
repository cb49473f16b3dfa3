#pragma once

// Dense complex matrix kernel for small operators (dim <= a few hundred).
//
// Inner products are linear in the first argument: <u, v> = sum_i u_i conj(v_i).
// Eigen- and singular-value routines are cyclic Jacobi sweeps on Hermitian
// forms; they favour robustness over speed.
//
// Polar decomposition follows the partial-isometry convention: the isometric
// factor annihilates ker|M|. The Aluthge transform built on top of it does
// not depend on this choice because |M|^{1/2} vanishes on that kernel.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qnr/error.hpp"

namespace qnr {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kDefaultHermTol = 1e-10;
inline constexpr double kDefaultPsdTol = 1e-10;

/// Square complex matrix stored row-major.
class CMat {
public:
    CMat() = default;
    explicit CMat(std::size_t dim);
    CMat(std::size_t dim, std::vector<Complex> entries);
    CMat(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMat identity(std::size_t dim);
    static CMat diagonal(std::span<const Complex> diag);
    static CMat diagonal(std::initializer_list<Complex> diag);

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }

    std::span<const Complex> entries() const noexcept { return a_; }
    std::span<Complex> entries() noexcept { return a_; }

    bool all_finite() const noexcept;

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(Complex s) noexcept;

    bool operator==(const CMat& o) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(const CMat& a, const CMat& b);
CMat operator*(Complex s, CMat a);
CMat operator*(CMat a, Complex s);

// Vector helpers.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);
CVec normalized(CVec v);
CVec matvec(const CMat& m, std::span<const Complex> x);
/// m^* x without forming the adjoint.
CVec matvec_adjoint(const CMat& m, std::span<const Complex> x);

CMat adjoint(const CMat& m);
CMat transpose(const CMat& m);
CMat conj(const CMat& m);
Complex trace(const CMat& m);
double frobenius_norm(const CMat& m);
/// Largest entry modulus; cheap scale used by tolerance checks.
double max_abs(const CMat& m);

/// Largest singular value.
double spectral_norm(const CMat& m);
/// Smallest singular value, i.e. inf over unit x of |Mx|.
double sigma_min(const CMat& m);
/// All singular values, descending.
std::vector<double> singular_values(const CMat& m);

struct EigenPair {
    double value;
    CVec vector;
};

/// Ascending eigenvalues with orthonormal eigenvectors. Throws NotHermitian
/// when |H - H^*| exceeds tol_herm * |H| (entrywise max).
std::vector<EigenPair> herm_eig(const CMat& h, double tol_herm = kDefaultHermTol);

/// Ascending eigenvalues of the Hermitian part (H + H^*)/2; no check.
std::vector<double> herm_eigenvalues(const CMat& h);

/// Largest eigenvalue of the Hermitian part of h, and its eigenvector.
EigenPair herm_top(const CMat& h);

/// PSD square root. Eigenvalues in [-tol_psd*|P|, 0) are clamped to zero.
CMat psd_sqrt(const CMat& p, double tol_psd = kDefaultPsdTol);

struct PolarParts {
    CMat isometry;
    CMat modulus;
};

PolarParts polar(const CMat& m);

/// Eigenvalues of a general matrix (Hessenberg reduction + shifted QR).
std::vector<Complex> eigenvalues(const CMat& m);

/// Characteristic polynomial det(zI - M) by the Faddeev-LeVerrier recursion,
/// coefficients from z^n down to z^0 (leading 1).
std::vector<Complex> char_poly(const CMat& m);

/// Inverse by Gauss-Jordan with partial pivoting; throws Singular.
CMat inverse(const CMat& m);

/// Assemble [[a, b], [c, d]] from equally sized square blocks.
CMat block(const CMat& a, const CMat& b, const CMat& c, const CMat& d);

/// Principal/off-diagonal pieces of m split after row/column `k`.
struct BlockSplit {
    CMat top_left;
    CMat bottom_right;
    double top_right_norm;
    double bottom_left_norm;
};
BlockSplit split_blocks(const CMat& m, std::size_t k);

}  // namespace qnr
