#include "qnr/qrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnr/detail/golden.hpp"
#include "qnr/random.hpp"

namespace qnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double s_of(Complex q) { return std::sqrt(std::max(0.0, 1.0 - std::norm(q))); }

// f(x) = Re(c a) + alpha |a| + s sqrt(|Tx|^2 - |a|^2), a = <Tx, x>.
// omega_q uses (c, alpha) = (0, q); the support function at theta uses
// (e^{-i theta} q, 0).
struct Objective {
    Complex c;
    double alpha;
    double s;
};

struct Point {
    double f;
    Complex a;
    double v;
    CVec u;  // Tx
};

class SphereAscent {
public:
    SphereAscent(const CMat& t, Objective obj)
        : t_(t), obj_(obj), n_(t.dim()), scale_(std::max(frobenius_norm(t), 1e-300)) {}

    Point eval(const CVec& x) const {
        Point p;
        p.u.assign(n_, Complex{});
        for (std::size_t i = 0; i < n_; ++i) {
            Complex s{};
            for (std::size_t j = 0; j < n_; ++j) s += t_(i, j) * x[j];
            p.u[i] = s;
        }
        Complex a{};
        for (std::size_t i = 0; i < n_; ++i) a += std::conj(x[i]) * p.u[i];
        // ||Tx - a x||^2 summed directly; ||Tx||^2 - |a|^2 loses half the digits near eigenvectors.
        double v = 0.0;
        for (std::size_t i = 0; i < n_; ++i) v += std::norm(p.u[i] - a * x[i]);
        p.a = a;
        p.v = v;
        p.f = (obj_.c * a).real() + obj_.alpha * std::abs(a) + obj_.s * std::sqrt(p.v);
        return p;
    }

    // Riemannian gradient at x (tangent to the sphere).
    CVec grad(const CVec& x, const Point& p) const {
        CVec w(n_), z(n_), g(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                w[j] += std::conj(t_(i, j)) * x[i];
                z[j] += std::conj(t_(i, j)) * p.u[i];
            }
        const double absa = std::abs(p.a);
        const bool use_abs = obj_.alpha != 0.0 && absa > 1e-14 * scale_;
        const bool use_v = obj_.s != 0.0 && p.v > 1e-28 * scale_ * scale_;
        const double rv = use_v ? std::sqrt(p.v) : 1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const Complex sym = std::conj(p.a) * p.u[i] + p.a * w[i];
            Complex gi = obj_.c * p.u[i] + std::conj(obj_.c) * w[i];
            if (use_abs) gi += obj_.alpha * sym / absa;
            if (use_v) gi += obj_.s * (z[i] - sym) / rv;
            g[i] = gi;
        }
        double radial = 0.0;
        for (std::size_t i = 0; i < n_; ++i) radial += (std::conj(x[i]) * g[i]).real();
        for (std::size_t i = 0; i < n_; ++i) g[i] -= radial * x[i];
        return g;
    }

    bool near_kink(const Point& p) const {
        const double b2 = p.v + std::norm(p.a);
        const bool v_kink = obj_.s != 0.0 && p.v < 1e-10 * std::max(b2, 1e-300);
        const bool a_kink = obj_.alpha != 0.0 && std::abs(p.a) < 1e-6 * scale_;
        return (v_kink && b2 > 0.0) || a_kink;
    }

    struct Result {
        CVec x;
        Point p;
        bool converged;
    };

    Result run(CVec x, int max_iter) const {
        x = normalized(std::move(x));
        Point p = eval(x);
        CVec g = grad(x, p);
        double gn2 = sq(g);
        const double gtol = 1e-10 * scale_;
        double eta = 1.0 / scale_;
        bool converged = false;
        int stagnant = 0;
        for (int it = 0; it < max_iter; ++it) {
            if (std::sqrt(gn2) <= gtol) {
                converged = true;
                break;
            }
            CVec xn(n_);
            Point pn;
            bool accepted = false;
            for (int bt = 0; bt < 50; ++bt) {
                for (std::size_t i = 0; i < n_; ++i) xn[i] = x[i] + eta * g[i];
                xn = normalized(std::move(xn));
                pn = eval(xn);
                if (pn.f >= p.f + 1e-4 * eta * gn2) {
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!accepted) {
                converged = true;  // no ascent left at working precision
                break;
            }
            CVec gnew = grad(xn, pn);
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < n_; ++i) {
                const Complex dx = xn[i] - x[i];
                ss += std::norm(dx);
                sy -= (std::conj(dx) * (gnew[i] - g[i])).real();
            }
            eta = sy > 0.0 ? ss / sy : 2.0 * eta;
            eta = std::clamp(eta, 1e-12 / scale_, 1e6 / scale_);
            const double gain = pn.f - p.f;
            stagnant = gain <= 1e-15 * std::max(std::abs(pn.f), scale_) ? stagnant + 1 : 0;
            x = std::move(xn);
            p = std::move(pn);
            g = std::move(gnew);
            gn2 = sq(g);
            if (stagnant >= 4) {
                converged = true;
                break;
            }
        }
        if (near_kink(p)) polish(x, p);
        return {std::move(x), std::move(p), converged};
    }

private:
    static double sq(const CVec& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        return s;
    }

    // Coordinate-wise golden-section refinement along e_j and i e_j; used
    // where the gradient is undefined.
    void polish(CVec& x, Point& p) const {
        double h = 1e-2;
        for (int sweep = 0; sweep < 6; ++sweep, h *= 0.1) {
            for (std::size_t j = 0; j < n_; ++j)
                for (Complex dir : {Complex(1.0), Complex(0.0, 1.0)}) {
                    auto along = [&](double tt) {
                        CVec y = x;
                        y[j] += tt * dir;
                        return normalized(std::move(y));
                    };
                    auto [tb, fb] = detail::golden_max([&](double tt) { return eval(along(tt)).f; }, -h, h,
                                                       1e-3 * h, 60);
                    if (fb > p.f) {
                        x = along(tb);
                        p = eval(x);
                    }
                }
        }
    }

    const CMat& t_;
    Objective obj_;
    std::size_t n_;
    double scale_;
};

// Fixed starting vectors shared by every restart of one solve.
std::vector<CVec> anchors_for(const CMat& t, const std::vector<Complex>& directions) {
    std::vector<CVec> out;
    out.push_back(herm_top(adjoint(t) * t).vector);
    for (Complex d : directions) {
        if (std::abs(d) == 0.0) continue;
        CMat r = t;
        r *= d / std::abs(d);
        out.push_back(herm_top(r).vector);
    }
    return out;
}

CVec start_vector(const std::vector<CVec>& anchors, std::size_t n, std::uint64_t seed, std::uint64_t stream,
                  int i) {
    const int na = static_cast<int>(anchors.size());
    if (i < na) return anchors[static_cast<std::size_t>(i)];
    const int k = i - na;
    Rng rng = make_rng(seed, stream * 0x10001ULL + static_cast<std::uint64_t>(i));
    CVec noise = random_unit(rng, n);
    const int mode = k % 3;
    if (mode == 0 || na == 0) return noise;
    const CVec& base = anchors[static_cast<std::size_t>((k / 3) % na)];
    const double scale = mode == 1 ? 0.5 : 0.15;
    CVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = base[j] + scale * noise[j];
    if (norm(x) < 1e-12) return noise;
    return x;
}

struct MultiResult {
    std::size_t best;
    std::vector<SphereAscent::Result> runs;
};

MultiResult multistart(const SphereAscent& asc, const std::vector<CVec>& anchors, std::size_t n, int restarts,
                       std::uint64_t seed, std::uint64_t stream, Exec exec, int max_iter) {
    std::vector<SphereAscent::Result> runs(static_cast<std::size_t>(restarts));
    auto one = [&](int i) { runs[static_cast<std::size_t>(i)] = asc.run(start_vector(anchors, n, seed, stream, i), max_iter); };
    if (exec == Exec::Parallel && restarts > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
        for (int i = 0; i < restarts; ++i) one(i);
    } else {
        for (int i = 0; i < restarts; ++i) one(i);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].p.f > runs[best].p.f) best = i;
    return {best, std::move(runs)};
}

Complex support_point(Complex q, double theta, const Point& p) {
    return q * p.a + s_of(q) * std::sqrt(p.v) * std::polar(1.0, theta);
}

}  // namespace

void check_q(Complex q) {
    if (!(std::abs(q) <= 1.0 + 1e-12))
        throw Error(ErrorCode::InvalidArgument, "q must lie in the closed unit disk");
}

AdmissiblePair sample_pair(Complex q, std::uint64_t seed, std::size_t dim) {
    check_q(q);
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
    const double s = s_of(q);
    Rng rng = make_rng(seed, 0xad31);
    CVec x = random_unit(rng, dim);
    if (dim == 1) {
        if (std::abs(std::abs(q) - 1.0) > 1e-12)
            throw Error(ErrorCode::InfeasibleQ, "dimension 1 admits only |q| = 1");
        return {x, {std::conj(q) * x[0]}, q};
    }
    CVec z;
    do {
        z = gaussian_vector(rng, dim);
        const Complex d = inner(z, x);
        for (std::size_t i = 0; i < dim; ++i) z[i] -= d * x[i];
    } while (norm(z) < 1e-8);
    z = normalized(std::move(z));
    CVec y(dim);
    for (std::size_t i = 0; i < dim; ++i) y[i] = std::conj(q) * x[i] + s * z[i];
    return {std::move(x), std::move(y), q};
}

Complex pair_value(const CMat& t, const AdmissiblePair& p) { return inner(matvec(t, p.x), p.y); }

AdmissiblePair pair_for_witness(const CMat& t, const CVec& x0, Complex q, double theta) {
    check_q(q);
    const CVec x = normalized(x0);
    const std::size_t n = x.size();
    const double s = s_of(q);
    const CVec u = matvec(t, x);
    const Complex a = inner(u, x);
    CVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = u[i] - a * x[i];
    CVec z;
    if (norm(r) > 1e-14 * std::max(norm(u), 1e-300)) {
        // Reorthogonalise: r is computed with cancellation when x is nearly an eigenvector.
        z = normalized(std::move(r));
        const Complex d = inner(z, x);
        for (std::size_t i = 0; i < n; ++i) z[i] -= d * x[i];
        z = normalized(std::move(z));
        for (auto& zi : z) zi *= std::polar(1.0, -theta);
    } else if (n > 1) {
        // Any unit vector orthogonal to x.
        std::size_t k = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(x[i]) < std::abs(x[k])) k = i;
        z.assign(n, Complex{});
        z[k] = 1.0;
        const Complex d = inner(z, x);
        for (std::size_t i = 0; i < n; ++i) z[i] -= d * x[i];
        z = normalized(std::move(z));
    } else {
        z.assign(1, Complex{});
    }
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::conj(q) * x[i] + s * z[i];
    return {x, std::move(y), q};
}

double omega_objective(const CMat& t, double q, std::span<const Complex> x) {
    SphereAscent asc(t, {0.0, q, s_of(q)});
    return asc.eval(CVec(x.begin(), x.end())).f;
}

double support_objective(const CMat& t, Complex q, double theta, std::span<const Complex> x) {
    check_q(q);
    SphereAscent asc(t, {std::polar(1.0, -theta) * q, 0.0, s_of(q)});
    return asc.eval(normalized(CVec(x.begin(), x.end()))).f;
}

OmegaEstimate omega_q(const CMat& t, double q, const SphereOptions& opt) {
    if (!(q >= 0.0 && q <= 1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "q must lie in [0, 1]");
    if (opt.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
    q = std::min(q, 1.0);
    const std::size_t n = t.dim();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    OmegaEstimate est;
    if (n == 1) {
        if (q < 1.0 - 1e-12) throw Error(ErrorCode::InfeasibleQ, "dimension 1 admits only q = 1");
        est.value = std::abs(t(0, 0));
        est.witness_x = {1.0};
        est.witness_phase = std::arg(t(0, 0));
        est.restarts_used = 1;
        return est;
    }
    const SphereAscent asc(t, {0.0, q, s_of(q)});
    const auto anchors = anchors_for(t, {1.0, Complex(0, 1), -1.0, Complex(0, -1)});
    const auto mr = multistart(asc, anchors, n, opt.restarts, opt.seed, 0, opt.exec, opt.max_iter);
    const auto& best = mr.runs[mr.best];
    double lo = best.p.f;
    for (const auto& r : mr.runs)
        if (r.converged) lo = std::min(lo, r.p.f);
    est.value = best.p.f;
    est.witness_x = best.x;
    est.witness_phase = std::abs(best.p.a) > 0.0 ? std::arg(best.p.a) : 0.0;
    est.restarts_used = opt.restarts;
    est.spread = best.p.f - lo;
    return est;
}

std::optional<double> omega_q_2x2_closed(const CMat& t, double q) {
    if (t.dim() != 2) throw Error(ErrorCode::DimMismatch, "closed form needs a 2x2 matrix");
    if (!(q >= 0.0 && q <= 1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "q must lie in [0, 1]");
    q = std::min(q, 1.0);
    const double s = std::sqrt(1.0 - q * q);
    const auto ev = eigenvalues(t);
    const Complex l1 = ev[0], l2 = ev[1];
    const double fro2 = std::norm(frobenius_norm(t));
    // Schur off-diagonal c = <T v2, v1> with v1 an eigenvector for l1 and
    // v2 its orthogonal complement.
    CVec v1{t(0, 1), l1 - t(0, 0)};
    const CVec alt{l1 - t(1, 1), t(1, 0)};
    if (norm(alt) > norm(v1)) v1 = alt;
    double c = 0.0;
    if (norm(v1) > 0.0) {
        v1 = normalized(std::move(v1));
        const CVec v2{-std::conj(v1[1]), std::conj(v1[0])};
        c = std::abs(inner(matvec(t, v2), v1));
    }
    const double d = std::abs(l1 - l2);
    const double minor = 0.5 * (s * std::sqrt(d * d + c * c) + c);
    const double major = std::sqrt(minor * minor + 0.25 * q * q * d * d);
    const Complex centre = 0.5 * q * (l1 + l2);
    const double scale = std::max(fro2, 1e-300);
    const bool on_axis = std::abs(centre) <= 1e-13 * std::sqrt(scale) || d <= 1e-13 * std::sqrt(scale) ||
                         std::abs((centre * std::conj(l1 - l2)).imag()) <= 1e-12 * scale;
    if (!on_axis) return std::nullopt;
    return std::abs(centre) + major;
}

double support_function(const CMat& t, Complex q, double theta, const SphereOptions& opt) {
    check_q(q);
    const std::size_t n = t.dim();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (n == 1) {
        if (std::abs(std::abs(q) - 1.0) > 1e-12) throw Error(ErrorCode::InfeasibleQ, "dimension 1 admits only |q| = 1");
        return (std::polar(1.0, -theta) * q * t(0, 0)).real();
    }
    const Complex c = std::polar(1.0, -theta) * q;
    const SphereAscent asc(t, {c, 0.0, s_of(q)});
    const auto anchors = anchors_for(t, {c});
    const auto mr = multistart(asc, anchors, n, opt.restarts, opt.seed, 0, opt.exec, opt.max_iter);
    return mr.runs[mr.best].p.f;
}

std::vector<double> theta_grid(int n_theta) {
    if (n_theta < 1) throw Error(ErrorCode::InvalidArgument, "grid size must be positive");
    std::vector<double> g(static_cast<std::size_t>(n_theta));
    for (int k = 0; k < n_theta; ++k) g[static_cast<std::size_t>(k)] = kTwoPi * k / n_theta;
    return g;
}

std::vector<SupportSample> support_table(const CMat& t, Complex q, std::span<const double> thetas,
                                         const TableOptions& opt) {
    check_q(q);
    const std::size_t n = t.dim();
    const std::size_t m = thetas.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (opt.warm && opt.warm->size() != m) throw Error(ErrorCode::GridMismatch, "warm starts do not match the grid");
    std::vector<SupportSample> out(m);
    if (n == 1) {
        if (std::abs(std::abs(q) - 1.0) > 1e-12) throw Error(ErrorCode::InfeasibleQ, "dimension 1 admits only |q| = 1");
        for (std::size_t k = 0; k < m; ++k) {
            const Complex p = q * t(0, 0);
            out[k] = {(std::polar(1.0, -thetas[k]) * p).real(), p, CVec{1.0}};
        }
        return out;
    }
    const double s = s_of(q);
    auto ascent_at = [&](std::size_t k) {
        return SphereAscent(t, {std::polar(1.0, -thetas[k]) * q, 0.0, s});
    };
    auto solve = [&](std::size_t k) {
        const SphereAscent asc = ascent_at(k);
        auto anchors = anchors_for(t, {std::polar(1.0, -thetas[k]) * q});
        if (opt.warm && !(*opt.warm)[k].empty()) anchors.insert(anchors.begin(), (*opt.warm)[k]);
        const int restarts = std::max(opt.restarts, 1);
        const auto mr = multistart(asc, anchors, n, restarts, opt.seed, k, Exec::Serial, opt.max_iter);
        const auto& b = mr.runs[mr.best];
        out[k] = {b.p.f, support_point(q, thetas[k], b.p), b.x};
    };
    const int mi = static_cast<int>(m);
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
        for (int k = 0; k < mi; ++k) solve(static_cast<std::size_t>(k));
    } else {
        for (int k = 0; k < mi; ++k) solve(static_cast<std::size_t>(k));
    }

    // Neighbour sweeps: a witness for one direction is a strong start for
    // the next. The grid is treated as cyclic.
    auto relax = [&](std::size_t k, std::size_t from) {
        const SphereAscent asc = ascent_at(k);
        const auto r = asc.run(out[from].x, opt.max_iter);
        if (r.p.f > out[k].value) out[k] = {r.p.f, support_point(q, thetas[k], r.p), r.x};
    };
    if (m > 1) {
        for (std::size_t k = 1; k <= m; ++k) relax(k % m, k - 1);
        for (std::size_t k = m; k-- > 0;) relax(k, (k + 1) % m);
    }

    // Every found point is in W_q(T) and bounds every direction from below.
    for (std::size_t k = 0; k < m; ++k) {
        const Complex e = std::polar(1.0, -thetas[k]);
        for (std::size_t j = 0; j < m; ++j) {
            const double val = (e * out[j].point).real();
            if (val > out[k].value) {
                out[k].value = val;
                out[k].point = out[j].point;
                out[k].x = out[j].x;
            }
        }
    }
    return out;
}

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    auto less = [](Complex a, Complex b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](Complex o, Complex a, Complex b) {
        return (a - o).real() * (b - o).imag() - (a - o).imag() * (b - o).real();
    };
    std::vector<Complex> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}


ConvexRange range_cloud(const CMat& t, Complex q, int n_theta, int n_samples, std::uint64_t seed,
                        const TableOptions& opt) {
    if (n_theta < 16) throw Error(ErrorCode::InvalidArgument, "n_theta must be at least 16");
    if (n_samples < 0) throw Error(ErrorCode::InvalidArgument, "sample count must be non-negative");
    check_q(q);
    ConvexRange r;
    r.q = q;
    r.grid = theta_grid(n_theta);
    TableOptions topt = opt;
    topt.seed = seed ^ 0x7ab1eULL;
    auto table = support_table(t, q, r.grid, topt);
    for (auto& s : table) {
        r.support.push_back(s.value);
        r.support_points.push_back(s.point);
        r.witnesses.push_back(std::move(s.x));
    }
    r.cloud.resize(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j)
        r.cloud[static_cast<std::size_t>(j)] = pair_value(t, sample_pair(q, splitmix64(seed) + static_cast<std::uint64_t>(j), t.dim()));
    std::vector<Complex> cloud = std::move(r.cloud);
    r.cloud.clear();
    absorb_points(r, cloud);
    return r;
}

void absorb_points(ConvexRange& r, std::span<const Complex> pts) {
    for (std::size_t k = 0; k < r.grid.size(); ++k) {
        const Complex e = std::polar(1.0, -r.grid[k]);
        for (const auto& p : pts) {
            const double val = (e * p).real();
            if (val > r.support[k]) {
                r.support[k] = val;
                r.support_points[k] = p;
            }
        }
    }
    r.cloud.insert(r.cloud.end(), pts.begin(), pts.end());
    r.hull = convex_hull(r.support_points);
}

ZeroTest contains_zero(const ConvexRange& r) {
    double margin = r.support.empty() ? 0.0 : *std::min_element(r.support.begin(), r.support.end());
    return {margin >= -1e-8, margin};
}

double hausdorff(std::span<const double> ha, std::span<const double> hb) {
    if (ha.size() != hb.size()) throw Error(ErrorCode::GridMismatch, "support tables differ in length");
    double d = 0.0;
    for (std::size_t k = 0; k < ha.size(); ++k) d = std::max(d, std::abs(ha[k] - hb[k]));
    return d;
}

double hausdorff(const ConvexRange& a, const ConvexRange& b) {
    if (a.grid.size() != b.grid.size()) throw Error(ErrorCode::GridMismatch, "angular grids differ");
    for (std::size_t k = 0; k < a.grid.size(); ++k)
        if (std::abs(a.grid[k] - b.grid[k]) > 1e-12) throw Error(ErrorCode::GridMismatch, "angular grids differ");
    return hausdorff(a.support, b.support);
}

}  // namespace qnr
