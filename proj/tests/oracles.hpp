#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's eigen, norm or optimisation routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qnr/matcore.hpp"

namespace oracle {

using qnr::CMat;
using qnr::Complex;
using qnr::CVec;

/// det(M) by Gaussian elimination with partial pivoting.
inline Complex det(CMat m) {
    const std::size_t n = m.dim();
    Complex d = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m(r, c)) > std::abs(m(p, c))) p = r;
        if (std::abs(m(p, c)) == 0.0) return 0.0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return d;
}

/// det(zI - M).
inline Complex char_value(const CMat& m, Complex z) {
    CMat a = m;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) a(i, j) = (i == j ? z : Complex{}) - m(i, j);
    return det(a);
}

/// Monic characteristic polynomial (highest degree first) by interpolating
/// det(zI - M) at roots of unity.
inline std::vector<Complex> char_coeffs(const CMat& m) {
    const std::size_t n = m.dim();
    const std::size_t k = n + 1;
    std::vector<Complex> vals(k);
    for (std::size_t j = 0; j < k; ++j)
        vals[j] = char_value(m, std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k)));
    // Inverse DFT: coefficient of z^p.
    std::vector<Complex> low(k);
    for (std::size_t p = 0; p < k; ++p) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            s += vals[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(p * j) / static_cast<double>(k));
        low[p] = s / static_cast<double>(k);
    }
    return {low.rbegin(), low.rend()};
}

/// Roots of a monic polynomial (highest degree first) by Durand-Kerner.
inline std::vector<Complex> roots(const std::vector<Complex>& c) {
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    auto eval = [&](Complex z) {
        Complex v = 0.0;
        for (const auto& a : c) v = v * z + a;
        return v;
    };
    double radius = 0.0;
    for (std::size_t k = 1; k <= n; ++k) radius = std::max(radius, std::abs(c[k]));
    radius = 1.0 + radius;
    std::vector<Complex> z(n);
    const Complex seed(0.4, 0.9);
    for (std::size_t k = 0; k < n; ++k) z[k] = radius * std::pow(seed, static_cast<double>(k));
    for (int it = 0; it < 2000; ++it) {
        double move = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            Complex den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) den *= z[k] - z[j];
            if (std::abs(den) == 0.0) den = 1e-300;
            const Complex step = eval(z[k]) / den;
            z[k] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-15 * radius) break;
    }
    return z;
}

/// Largest distance between two multisets after greedy nearest matching.
inline double multiset_gap(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (const auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](const Complex& u, const Complex& v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

inline CVec mul(const CMat& m, const CVec& x) {
    CVec y(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) y[i] += m(i, j) * x[j];
    return y;
}

inline Complex dot(const CVec& u, const CVec& v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
    return s;
}

inline double vnorm(const CVec& v) { return std::sqrt(std::abs(dot(v, v))); }

/// |M| by power iteration on M^* M from several starts.
inline double op_norm(const CMat& m, int iters = 3000) {
    const std::size_t n = m.dim();
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    double best = 0.0;
    for (int s = 0; s < 3; ++s) {
        CVec x(n);
        for (auto& z : x) z = {g(rng), g(rng)};
        for (int it = 0; it < iters; ++it) {
            CVec y = mul(m, x);
            CVec z(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) z[i] += std::conj(m(j, i)) * y[j];
            const double nz = vnorm(z);
            if (nz == 0.0) break;
            for (auto& c : z) c /= nz;
            x = z;
        }
        best = std::max(best, vnorm(mul(m, x)) / vnorm(x));
    }
    return best;
}

/// min over lambda of |T - lambda I| by a shrinking compass search.
inline double transcendental(const CMat& t) {
    const std::size_t n = t.dim();
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += t(i, i);
    Complex lam = tr / static_cast<double>(n);
    auto f = [&](Complex l) {
        CMat a = t;
        for (std::size_t i = 0; i < n; ++i) a(i, i) -= l;
        return op_norm(a, 400);
    };
    double best = f(lam);
    double step = std::max(best, 1e-3);
    while (step > 1e-9) {
        bool moved = false;
        for (Complex d : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
            const double v = f(lam + step * d);
            if (v < best) {
                best = v;
                lam += step * d;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

/// Support function of the closed elliptical disk with foci f1, f2 and
/// minor semi-axis b.
inline double ellipse_support(Complex f1, Complex f2, double b, double theta) {
    const Complex centre = 0.5 * (f1 + f2);
    const double c = 0.5 * std::abs(f1 - f2);
    const double a = std::sqrt(b * b + c * c);
    const double axis = c > 0.0 ? std::arg(f1 - f2) : 0.0;
    const double phi = theta - axis;
    return (std::polar(1.0, -theta) * centre).real() +
           std::sqrt(a * a * std::cos(phi) * std::cos(phi) + b * b * std::sin(phi) * std::sin(phi));
}

/// W_q of a 2x2 upper-triangular [[l1, c], [0, l2]] as (foci, minor semi-axis).
struct Ellipse {
    Complex f1, f2;
    double b;
};

inline Ellipse triangular_range(Complex l1, Complex l2, Complex c, Complex q) {
    const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(q)));
    const double d = std::abs(l1 - l2);
    return {q * l1, q * l2, 0.5 * (s * std::sqrt(d * d + std::norm(c)) + std::abs(c))};
}

/// Best |<Tx, y>| over random admissible pairs: a lower bound on omega_q.
inline double sampled_radius(const CMat& t, double q, int samples, unsigned seed) {
    const std::size_t n = t.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const double s = std::sqrt(std::max(0.0, 1.0 - q * q));
    double best = 0.0;
    for (int k = 0; k < samples; ++k) {
        CVec x(n), z(n);
        for (auto& v : x) v = {g(rng), g(rng)};
        for (auto& v : z) v = {g(rng), g(rng)};
        const double nx = vnorm(x);
        for (auto& v : x) v /= nx;
        const Complex p = dot(z, x);
        for (std::size_t i = 0; i < n; ++i) z[i] -= p * x[i];
        const double nz = vnorm(z);
        for (auto& v : z) v /= nz;
        CVec y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = q * x[i] + s * z[i];
        best = std::max(best, std::abs(dot(mul(t, x), y)));
    }
    return best;
}

}  // namespace oracle
