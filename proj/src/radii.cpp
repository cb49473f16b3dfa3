#include "qnr/radii.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qnr/detail/golden.hpp"

namespace qnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CMat rotated(const CMat& t, double theta) {
    CMat r = t;
    r *= std::polar(1.0, -theta);
    return r;
}

// Indices of the `count` largest entries of h, best first.
std::vector<std::size_t> top_indices(const std::vector<double>& h, std::size_t count) {
    std::vector<std::size_t> idx(h.size());
    std::iota(idx.begin(), idx.end(), 0);
    count = std::min(count, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::size_t a, std::size_t b) { return h[a] > h[b] || (h[a] == h[b] && a < b); });
    idx.resize(count);
    return idx;
}

struct ScanMax {
    double theta;
    double value;
    int evals;
};

// Maximise g over the circle: grid scan followed by golden refinement around
// the three best grid points.
template <class G>
ScanMax circle_max(G&& g, const std::vector<double>& scan, double angle_tol) {
    const int n = static_cast<int>(scan.size());
    const double step = kTwoPi / n;
    ScanMax best{0.0, scan[0], n};
    for (int k = 0; k < n; ++k)
        if (scan[static_cast<std::size_t>(k)] > best.value) best = {step * k, scan[static_cast<std::size_t>(k)], n};
    int evals = n;
    for (std::size_t k : top_indices(scan, 3)) {
        const double c = step * static_cast<double>(k);
        auto [th, v] = detail::golden_max(g, c - step, c + step, angle_tol);
        evals += 60;
        if (v > best.value) best = {th, v, 0};
    }
    best.evals = evals;
    return best;
}

}  // namespace

double pencil_support(const CMat& t, double theta) {
    return herm_eigenvalues(rotated(t, theta)).back();
}

std::vector<double> pencil_scan(const CMat& t, int n, Exec exec) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "grid size must be positive");
    std::vector<double> h(static_cast<std::size_t>(n));
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_cap())
        for (int k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = pencil_support(t, kTwoPi * k / n);
    } else {
        for (int k = 0; k < n; ++k) h[static_cast<std::size_t>(k)] = pencil_support(t, kTwoPi * k / n);
    }
    return h;
}

RadiusResult numerical_radius(const CMat& t, const PencilOptions& opt) {
    if (t.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    const auto scan = pencil_scan(t, opt.grid, opt.exec);
    const auto best = circle_max([&](double th) { return pencil_support(t, th); }, scan, opt.angle_tol);
    RadiusResult r;
    const auto top = herm_top(rotated(t, best.theta));
    r.value = std::max(best.value, 0.0);
    r.witness = top.vector;
    r.iterations = best.evals;
    r.converged = true;
    return r;
}

RadiusResult crawford(const CMat& t, const PencilOptions& opt) {
    if (t.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    auto scan = pencil_scan(t, opt.grid, opt.exec);
    for (auto& v : scan) v = -v;
    const auto best = circle_max([&](double th) { return -pencil_support(t, th); }, scan, opt.angle_tol);
    const auto top = herm_top(rotated(t, best.theta));
    RadiusResult r;
    r.value = std::max(0.0, best.value);
    r.witness = inner(matvec(t, top.vector), top.vector);
    r.iterations = best.evals;
    r.converged = true;
    return r;
}

RadiusResult transcendental_radius(const CMat& t, double tol) {
    const std::size_t n = t.dim();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    const Complex tau = trace(t) / static_cast<double>(n);
    const double radius = spectral_norm(t - tau * CMat::identity(n));
    RadiusResult r;
    r.converged = true;
    if (radius == 0.0) {
        r.value = 0.0;
        r.witness = tau;
        return r;
    }
    int evals = 0;
    auto f = [&](double re, double im) {
        ++evals;
        return spectral_norm(t - Complex(re, im) * CMat::identity(n));
    };
    const double xtol = tol * std::max(radius, 1.0);
    auto inner_min = [&](double re) {
        return detail::golden_min([&](double im) { return f(re, im); }, tau.imag() - radius, tau.imag() + radius,
                                  xtol);
    };
    auto [re_best, val] =
        detail::golden_min([&](double re) { return inner_min(re).second; }, tau.real() - radius, tau.real() + radius, xtol);
    const auto [im_best, val2] = inner_min(re_best);
    const double at_tau = radius;
    r.value = std::min(val2, at_tau);
    r.witness = val2 <= at_tau ? Complex(re_best, im_best) : tau;
    (void)val;
    r.iterations = evals;
    return r;
}

RadiusResult prasanna_radius(const CMat& t, const SphereOptions& opt) {
    RadiusResult r;
    if (t.dim() == 1) {
        r.value = 0.0;
        r.witness = CVec{1.0};
        r.converged = true;
        return r;
    }
    const auto est = omega_q(t, 0.0, opt);
    r.value = est.value;
    r.witness = est.witness_x;
    r.iterations = est.restarts_used;
    r.converged = est.spread <= 1e-4;
    return r;
}

CMat anticommutator(const CMat& a, const CMat& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "anticommutator needs equal dimensions");
    return a * b + b * a;
}

}  // namespace qnr
