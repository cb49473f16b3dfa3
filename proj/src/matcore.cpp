#include "qnr/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qnr {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::InfeasibleQ: return "InfeasibleQ";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::PremiseFailed: return "PremiseFailed";
    case ErrorCode::SingularX: return "SingularX";
    case ErrorCode::QZero: return "QZero";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------- CMat

CMat::CMat(std::size_t dim) : dim_(dim), a_(dim * dim) {}

CMat::CMat(std::size_t dim, std::vector<Complex> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim_ * dim_)
        throw Error(ErrorCode::DimMismatch, "entry count does not match dim^2");
    if (!all_finite())
        throw Error(ErrorCode::NotFinite, "matrix has NaN or Inf entries");
}

CMat::CMat(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    a_.reserve(dim_ * dim_);
    for (const auto& r : rows) {
        if (r.size() != dim_)
            throw Error(ErrorCode::DimMismatch, "matrix rows must form a square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
    if (!all_finite())
        throw Error(ErrorCode::NotFinite, "matrix has NaN or Inf entries");
}

CMat CMat::identity(std::size_t dim) {
    CMat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diagonal(std::span<const Complex> diag) {
    CMat m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMat CMat::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

bool CMat::all_finite() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

CMat& CMat::operator+=(const CMat& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimMismatch, "matrix sum");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (o.dim_ != dim_) throw Error(ErrorCode::DimMismatch, "matrix difference");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat& CMat::operator*=(Complex s) noexcept {
    for (auto& z : a_) z *= s;
    return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(Complex s, CMat a) { return a *= s; }
CMat operator*(CMat a, Complex s) { return a *= s; }

CMat operator*(const CMat& a, const CMat& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) throw Error(ErrorCode::DimMismatch, "matrix product");
    CMat c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// ---------------------------------------------------------------- vectors

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw Error(ErrorCode::DimMismatch, "inner product");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

CVec normalized(CVec v) {
    const double nv = norm(v);
    if (nv == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot normalize the zero vector");
    for (auto& z : v) z /= nv;
    return v;
}

CVec matvec(const CMat& m, std::span<const Complex> x) {
    const std::size_t n = m.dim();
    if (x.size() != n) throw Error(ErrorCode::DimMismatch, "matrix-vector product");
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s{};
        for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

CVec matvec_adjoint(const CMat& m, std::span<const Complex> x) {
    const std::size_t n = m.dim();
    if (x.size() != n) throw Error(ErrorCode::DimMismatch, "adjoint matrix-vector product");
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[j] += std::conj(m(i, j)) * x[i];
    return y;
}

// ---------------------------------------------------------------- basics

CMat adjoint(const CMat& m) {
    const std::size_t n = m.dim();
    CMat r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

CMat transpose(const CMat& m) {
    const std::size_t n = m.dim();
    CMat r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(j, i) = m(i, j);
    return r;
}

CMat conj(const CMat& m) {
    CMat r = m;
    for (auto& z : r.entries()) z = std::conj(z);
    return r;
}

Complex trace(const CMat& m) {
    Complex s{};
    for (std::size_t i = 0; i < m.dim(); ++i) s += m(i, i);
    return s;
}

double frobenius_norm(const CMat& m) { return norm(m.entries()); }

double max_abs(const CMat& m) {
    double r = 0.0;
    for (const auto& z : m.entries()) r = std::max(r, std::abs(z));
    return r;
}

// ---------------------------------------------------------------- Jacobi

namespace {

// Cyclic Jacobi on a Hermitian matrix held row-major in `a`. On exit the
// diagonal holds the eigenvalues; `v`, when given, holds eigenvectors as
// columns.
void jacobi(std::vector<Complex>& a, std::size_t n, std::vector<Complex>* v) {
    if (v) {
        v->assign(n * n, Complex{});
        for (std::size_t i = 0; i < n; ++i) (*v)[i * n + i] = 1.0;
    }
    auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            diag += std::norm(at(p, p));
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(at(p, q));
        }
        if (off == 0.0 || off <= 1e-32 * diag) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = at(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                // Skip rotations that cannot change the diagonal in floating point.
                if (sweep > 3 && std::abs(app) + 1e-3 * mag == std::abs(app) &&
                    std::abs(aqq) + 1e-3 * mag == std::abs(aqq)) {
                    at(p, q) = at(q, p) = 0.0;
                    continue;
                }
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex ph = apq / mag;          // e^{i phi}
                const Complex phc = std::conj(ph);     // e^{-i phi}

                // Columns: A <- A G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - s * phc * aiq;
                    at(i, q) = s * aip + c * phc * aiq;
                }
                // Rows: A <- G^* A.
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = at(p, j), aqj = at(q, j);
                    at(p, j) = c * apj - s * ph * aqj;
                    at(q, j) = s * apj + c * ph * aqj;
                }
                at(p, q) = at(q, p) = 0.0;
                at(p, p) = at(p, p).real();
                at(q, q) = at(q, q).real();
                if (v) {
                    auto& vv = *v;
                    for (std::size_t i = 0; i < n; ++i) {
                        const Complex vip = vv[i * n + p], viq = vv[i * n + q];
                        vv[i * n + p] = c * vip - s * phc * viq;
                        vv[i * n + q] = s * vip + c * phc * viq;
                    }
                }
            }
        }
    }
}

std::vector<Complex> hermitian_part(const CMat& h) {
    const std::size_t n = h.dim();
    std::vector<Complex> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (h(i, j) + std::conj(h(j, i)));
    return a;
}

std::vector<EigenPair> sorted_pairs(const std::vector<Complex>& a, const std::vector<Complex>& v, std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return a[i * n + i].real() < a[j * n + j].real();
    });
    std::vector<EigenPair> out;
    out.reserve(n);
    for (std::size_t k : idx) {
        CVec vec(n);
        for (std::size_t i = 0; i < n; ++i) vec[i] = v[i * n + k];
        out.push_back({a[k * n + k].real(), std::move(vec)});
    }
    return out;
}

// A^* A as a fresh Hermitian matrix.
CMat gram(const CMat& m) {
    const std::size_t n = m.dim();
    CMat g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += std::conj(m(k, i)) * m(k, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    return g;
}

struct GramSvd {
    std::vector<double> sigma;  // |M v_i|, same order as vectors
    std::vector<CVec> right;    // eigenvectors of M^*M
};

GramSvd gram_svd(const CMat& m) {
    const std::size_t n = m.dim();
    std::vector<Complex> a = hermitian_part(gram(m));
    std::vector<Complex> v;
    jacobi(a, n, &v);
    auto eig = sorted_pairs(a, v, n);
    GramSvd out;
    for (auto& e : eig) {
        out.sigma.push_back(norm(matvec(m, e.vector)));
        out.right.push_back(std::move(e.vector));
    }
    return out;
}

}  // namespace

std::vector<EigenPair> herm_eig(const CMat& h, double tol_herm) {
    const std::size_t n = h.dim();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) asym = std::max(asym, std::abs(h(i, j) - std::conj(h(j, i))));
    if (asym > tol_herm * std::max(max_abs(h), std::numeric_limits<double>::min()))
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
    auto a = hermitian_part(h);
    std::vector<Complex> v;
    jacobi(a, n, &v);
    return sorted_pairs(a, v, n);
}

std::vector<double> herm_eigenvalues(const CMat& h) {
    const std::size_t n = h.dim();
    auto a = hermitian_part(h);
    jacobi(a, n, nullptr);
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

EigenPair herm_top(const CMat& h) {
    const std::size_t n = h.dim();
    auto a = hermitian_part(h);
    std::vector<Complex> v;
    jacobi(a, n, &v);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (a[i * n + i].real() > a[best * n + best].real()) best = i;
    CVec vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i] = v[i * n + best];
    return {a[best * n + best].real(), std::move(vec)};
}

double spectral_norm(const CMat& m) {
    if (m.dim() == 0) return 0.0;
    const auto ev = herm_eigenvalues(gram(m));
    return std::sqrt(std::max(ev.back(), 0.0));
}

std::vector<double> singular_values(const CMat& m) {
    auto s = gram_svd(m).sigma;
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

double sigma_min(const CMat& m) {
    if (m.dim() == 0) return 0.0;
    const auto s = gram_svd(m).sigma;
    return *std::min_element(s.begin(), s.end());
}

CMat psd_sqrt(const CMat& p, double tol_psd) {
    const std::size_t n = p.dim();
    const auto eig = herm_eig(p, tol_psd);
    double scale = 0.0;
    for (const auto& e : eig) scale = std::max(scale, std::abs(e.value));
    if (!eig.empty() && eig.front().value < -tol_psd * scale)
        throw Error(ErrorCode::NotPSD, "matrix has a negative eigenvalue beyond tolerance");
    CMat s(n);
    for (const auto& e : eig) {
        const double r = std::sqrt(std::max(e.value, 0.0));
        if (r == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s(i, j) += r * e.vector[i] * std::conj(e.vector[j]);
    }
    return s;
}

PolarParts polar(const CMat& m) {
    const std::size_t n = m.dim();
    const auto svd = gram_svd(m);
    double smax = 0.0;
    for (double s : svd.sigma) smax = std::max(smax, s);
    const double cutoff = 1e-13 * smax;

    PolarParts out{CMat(n), CMat(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double s = svd.sigma[k];
        const CVec& v = svd.right[k];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.modulus(i, j) += s * v[i] * std::conj(v[j]);
        if (s <= cutoff || s == 0.0) continue;
        CVec u = matvec(m, v);
        for (auto& z : u) z /= s;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.isometry(i, j) += u[i] * std::conj(v[j]);
    }
    return out;
}

// ---------------------------------------------------------------- general eigenvalues

std::vector<Complex> char_poly(const CMat& m) {
    const std::size_t n = m.dim();
    std::vector<Complex> c(n + 1);
    c[0] = 1.0;
    CMat acc(n);
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[k - 1];
        acc = m * acc;
        c[k] = -trace(acc) / static_cast<double>(k);
    }
    return c;
}

std::vector<Complex> eigenvalues(const CMat& m) {
    const std::size_t n = m.dim();
    if (n == 0) return {};
    if (n == 1) return {m(0, 0)};
    std::vector<Complex> a(m.entries().begin(), m.entries().end());
    auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

    // Householder reduction to upper Hessenberg form.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        CVec v(len);
        for (std::size_t i = 0; i < len; ++i) v[i] = at(k + 1 + i, k);
        const double alpha = norm(v);
        if (alpha == 0.0) continue;
        const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0);
        v[0] += phase * alpha;
        const double vn = norm(v);
        for (auto& z : v) z /= vn;
        for (std::size_t j = 0; j < n; ++j) {
            Complex w{};
            for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * at(k + 1 + i, j);
            for (std::size_t i = 0; i < len; ++i) at(k + 1 + i, j) -= 2.0 * v[i] * w;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex w{};
            for (std::size_t j = 0; j < len; ++j) w += at(i, k + 1 + j) * v[j];
            for (std::size_t j = 0; j < len; ++j) at(i, k + 1 + j) -= 2.0 * w * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) at(i, k) = 0.0;
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<Complex> ev;
    ev.reserve(n);
    std::size_t hi = n - 1;
    int iter = 0;
    std::vector<double> cs(n);
    std::vector<Complex> sn(n);
    while (true) {
        if (hi == 0) {
            ev.push_back(at(0, 0));
            break;
        }
        std::size_t l = hi;
        while (l > 0) {
            const double scale = std::abs(at(l - 1, l - 1)) + std::abs(at(l, l));
            if (std::abs(at(l, l - 1)) <= eps * (scale > 0.0 ? scale : 1.0)) {
                at(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            ev.push_back(at(hi, hi));
            --hi;
            iter = 0;
            continue;
        }
        if (++iter > 200) throw Error(ErrorCode::InvalidArgument, "QR iteration failed to converge");

        Complex mu;
        if (iter % 11 == 0) {
            mu = at(hi, hi) + std::abs(at(hi, hi - 1));
        } else {
            const Complex p = at(hi - 1, hi - 1), q = at(hi - 1, hi), r = at(hi, hi - 1), s = at(hi, hi);
            const Complex half_tr = 0.5 * (p + s);
            const Complex disc = std::sqrt(half_tr * half_tr - (p * s - q * r));
            const Complex m1 = half_tr + disc, m2 = half_tr - disc;
            mu = std::abs(m1 - s) < std::abs(m2 - s) ? m1 : m2;
        }

        for (std::size_t k = l; k <= hi; ++k) at(k, k) -= mu;
        for (std::size_t k = l; k < hi; ++k) {
            const Complex x = at(k, k), y = at(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            double c;
            Complex s;
            if (r == 0.0) {
                c = 1.0;
                s = 0.0;
            } else if (std::abs(x) == 0.0) {
                c = 0.0;
                s = std::conj(y) / std::abs(y);
            } else {
                c = std::abs(x) / r;
                s = (x / std::abs(x)) * std::conj(y) / r;
            }
            cs[k] = c;
            sn[k] = s;
            for (std::size_t j = k; j <= hi; ++j) {
                const Complex t1 = at(k, j), t2 = at(k + 1, j);
                at(k, j) = c * t1 + s * t2;
                at(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        for (std::size_t k = l; k < hi; ++k) {
            const double c = cs[k];
            const Complex s = sn[k];
            const std::size_t last = std::min(k + 2, hi);
            for (std::size_t i = l; i <= last; ++i) {
                const Complex t1 = at(i, k), t2 = at(i, k + 1);
                at(i, k) = t1 * c + t2 * std::conj(s);
                at(i, k + 1) = -t1 * s + t2 * c;
            }
        }
        for (std::size_t k = l; k <= hi; ++k) at(k, k) += mu;
    }
    return ev;
}

CMat inverse(const CMat& m) {
    const std::size_t n = m.dim();
    CMat a = m;
    CMat inv = CMat::identity(n);
    const double scale = max_abs(m);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-14 * scale || scale == 0.0)
            throw Error(ErrorCode::Singular, "matrix is numerically singular");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const Complex d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = a(r, col);
            if (f == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

CMat block(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
    const std::size_t k = a.dim();
    if (b.dim() != k || c.dim() != k || d.dim() != k)
        throw Error(ErrorCode::DimMismatch, "blocks must share one square size");
    CMat t(2 * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            t(i, j) = a(i, j);
            t(i, j + k) = b(i, j);
            t(i + k, j) = c(i, j);
            t(i + k, j + k) = d(i, j);
        }
    return t;
}

BlockSplit split_blocks(const CMat& m, std::size_t k) {
    const std::size_t n = m.dim();
    if (k == 0 || k >= n) throw Error(ErrorCode::DimMismatch, "block split index out of range");
    const std::size_t r = n - k;
    BlockSplit out{CMat(k), CMat(r), 0.0, 0.0};
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) out.top_left(i, j) = m(i, j);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) out.bottom_right(i, j) = m(k + i, k + j);
    // |B| for the k x r block B is sqrt(lambda_max(B^* B)), B^* B being r x r.
    CMat btb(r), ctc(k);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Complex s{};
            for (std::size_t t = 0; t < k; ++t) s += std::conj(m(t, k + i)) * m(t, k + j);
            btb(i, j) = s;
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Complex s{};
            for (std::size_t t = 0; t < r; ++t) s += std::conj(m(k + t, i)) * m(k + t, j);
            ctc(i, j) = s;
        }
    out.top_right_norm = std::sqrt(std::max(herm_eigenvalues(btb).back(), 0.0));
    out.bottom_left_norm = std::sqrt(std::max(herm_eigenvalues(ctc).back(), 0.0));
    return out;
}

}  // namespace qnr
