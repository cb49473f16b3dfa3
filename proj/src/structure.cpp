#include "qnr/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qnr/random.hpp"

namespace qnr {

namespace {

constexpr double kPi = std::numbers::pi;

double op_gap(const CMat& a, const CMat& b) { return spectral_norm(a - b); }

struct Table {
    std::vector<double> h;
    std::vector<CVec> x;
};

Table make_table(const CMat& t, Complex q, const std::vector<double>& grid, const TableOptions& opt,
                 const std::vector<CVec>* warm = nullptr) {
    TableOptions o = opt;
    o.warm = warm;
    auto rows = support_table(t, q, grid, o);
    Table out;
    for (auto& r : rows) {
        out.h.push_back(r.value);
        out.x.push_back(std::move(r.x));
    }
    return out;
}

// Raise the supports of `t` using another table's witnesses. Every x gives a
// valid lower bound, so this only moves estimates toward the true values.
void lift(Table& tab, const CMat& t, Complex q, const std::vector<double>& grid, const std::vector<CVec>& xs) {
    if (t.dim() == 1) return;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (xs[k].empty()) continue;
        const double v = support_objective(t, q, grid[k], xs[k]);
        if (v > tab.h[k]) {
            tab.h[k] = v;
            tab.x[k] = xs[k];
        }
    }
}

void add(TheoremReport& r, std::string name, double v) { r.metrics.emplace_back(std::move(name), v); }

}  // namespace

bool is_normal(const CMat& t, double tol) {
    const CMat ts = adjoint(t);
    const double n = spectral_norm(t);
    return spectral_norm(ts * t - t * ts) <= tol * n * n;
}

bool is_hyponormal(const CMat& t, double tol) {
    const CMat ts = adjoint(t);
    const double n = spectral_norm(t);
    return herm_eigenvalues(ts * t - t * ts).front() >= -tol * n * n;
}

ConjugationSpec ConjugationSpec::from_matrix(CMat u) {
    const std::size_t n = u.dim();
    const double unit = max_abs(adjoint(u) * u - CMat::identity(n));
    const double sym = max_abs(u - transpose(u));
    if (unit > 1e-10 || sym > 1e-10)
        throw Error(ErrorCode::InvalidArgument, "a conjugation needs a symmetric unitary matrix");
    return {std::move(u)};
}

ConjugationSpec ConjugationSpec::swap(std::size_t n) {
    CMat u(n);
    for (std::size_t i = 0; i < n; ++i) u(i, n - 1 - i) = 1.0;
    return {std::move(u)};
}

ConjugationSpec ConjugationSpec::standard(std::size_t n) { return {CMat::identity(n)}; }

CVec conjugation_apply(const ConjugationSpec& c, std::span<const Complex> v) {
    if (v.size() != c.u.dim()) throw Error(ErrorCode::DimMismatch, "conjugation and vector differ in dimension");
    CVec cv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) cv[i] = std::conj(v[i]);
    return matvec(c.u, cv);
}

CMat conjugate_operator(const ConjugationSpec& c, const CMat& a) {
    if (a.dim() != c.u.dim()) throw Error(ErrorCode::DimMismatch, "conjugation and operator differ in dimension");
    return c.u * conj(a) * conj(c.u);
}

double complex_symmetry_defect(const CMat& t, const ConjugationSpec& c) {
    return spectral_norm(t - conjugate_operator(c, adjoint(t)));
}

bool is_complex_symmetric(const CMat& t, const ConjugationSpec& c, double tol) {
    return complex_symmetry_defect(t, c) <= tol * spectral_norm(t);
}

CMat aluthge_with(const CMat& t, const CMat& isometry) {
    const auto p = polar(t);
    const CMat s = psd_sqrt(p.modulus);
    return s * isometry * s;
}

CMat aluthge(const CMat& t) {
    const auto p = polar(t);
    const CMat s = psd_sqrt(p.modulus);
    return s * p.isometry * s;
}

CMat unitary_extension(const PolarParts& p) {
    const std::size_t n = p.modulus.dim();
    const auto mod = herm_eig(p.modulus);
    double top = 0.0;
    for (const auto& e : mod) top = std::max(top, std::abs(e.value));
    std::vector<CVec> kernel;
    for (const auto& e : mod)
        if (e.value <= 1e-12 * std::max(top, 1e-300)) kernel.push_back(e.vector);
    const auto co = herm_eig(CMat::identity(n) - p.isometry * adjoint(p.isometry));
    std::vector<CVec> complement;
    for (const auto& e : co)
        if (e.value >= 0.5) complement.push_back(e.vector);
    CMat u = p.isometry;
    if (kernel.size() != complement.size()) return u;
    for (std::size_t k = 0; k < kernel.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) u(i, j) += complement[k][i] * std::conj(kernel[k][j]);
    return u;
}

std::string_view to_string(TheoremId id) {
    switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::T4: return "T4";
    case TheoremId::T5: return "T5";
    case TheoremId::T6: return "T6";
    }
    return "?";
}

double TheoremReport::metric(std::string_view name) const {
    for (const auto& [k, v] : metrics)
        if (k == name) return v;
    throw Error(ErrorCode::InvalidArgument, "no metric named " + std::string(name));
}

// ---------------------------------------------------------------- T1

TheoremReport check_thm1(const CMat& t, Complex q, int n_theta, const HarnessOptions& opt) {
    TheoremReport r;
    r.id = TheoremId::T1;
    const bool normal = is_normal(t);
    const auto range = range_cloud(t, q, n_theta, opt.samples, opt.seed, opt.table);
    const auto zero = contains_zero(range);
    r.premises_ok = normal && zero.contains;
    add(r, "normal", normal ? 1.0 : 0.0);
    add(r, "margin", zero.margin);
    r.conclusion_ok = r.premises_ok && zero.margin > 1e-8;
    if (!normal) r.notes = "operator is not normal";
    else if (!zero.contains) r.notes = "origin lies outside W_q(T)";
    else if (!r.conclusion_ok) r.notes = "origin lies on the boundary of W_q(T); interior margin is zero";
    return r;
}

// ---------------------------------------------------------------- T2

TheoremReport check_thm2(const CMat& t, const ConjugationSpec& c, Complex q, int n_theta,
                         const HarnessOptions& opt) {
    check_q(q);
    const double defect = complex_symmetry_defect(t, c);
    if (defect > 1e-10 * std::max(spectral_norm(t), 1e-300))
        throw Error(ErrorCode::PremiseFailed, "operator is not complex symmetric under the given conjugation");
    TheoremReport r;
    r.id = TheoremId::T2;
    r.premises_ok = true;
    add(r, "symmetry_defect", defect);

    const auto grid = theta_grid(n_theta);
    const std::size_t m = grid.size();
    const CMat ts = adjoint(t);
    const Table ht = make_table(t, q, grid, opt.table);

    // phi_j = theta_j, so h_{e^{i phi} S}(theta_k) = h_S(theta_{k - j}).
    std::vector<double> per_phi(m, -1e300);
    for (std::size_t j = 0; j < m; ++j) {
        const Complex qj = std::conj(q) * std::polar(1.0, -grid[j]);
        const Table hj = make_table(ts, qj, grid, opt.table);
        for (std::size_t k = 0; k < m; ++k) per_phi[j] = std::max(per_phi[j], ht.h[k] - hj.h[(k + m - j) % m]);
    }
    const double violation = *std::max_element(per_phi.begin(), per_phi.end());
    add(r, "inclusion_violation", violation);
    add(r, "slice0_violation", per_phi[0]);
    if (std::abs(q) == 0.0) {
        const double mean = std::accumulate(ht.h.begin(), ht.h.end(), 0.0) / static_cast<double>(m);
        double circ = 0.0;
        for (double v : ht.h) circ = std::max(circ, std::abs(v - mean));
        add(r, "circularity_defect", circ);
    }
    r.conclusion_ok = violation <= 1e-5;
    return r;
}

// ---------------------------------------------------------------- T3

TheoremReport check_thm3(const CMat& t, const CMat& x, Complex q, int n_theta, const HarnessOptions& opt) {
    if (x.dim() != t.dim()) throw Error(ErrorCode::DimMismatch, "similarity and operator differ in dimension");
    if (sigma_min(x) <= 1e-10) throw Error(ErrorCode::SingularX, "similarity transform is not invertible");
    TheoremReport r;
    r.id = TheoremId::T3;
    const CMat xi = inverse(x);
    const CMat ts = adjoint(t);
    const bool hypo = is_hyponormal(t);
    const double sim = op_gap(xi * t * x, ts);
    const auto range = range_cloud(xi, q, n_theta, opt.samples, opt.seed, opt.table);
    const auto zero = contains_zero(range);
    r.premises_ok = hypo && sim <= 1e-8 && !zero.contains;
    add(r, "hyponormal", hypo ? 1.0 : 0.0);
    add(r, "similarity_defect", sim);
    add(r, "x_inverse_margin", zero.margin);

    const double sa = op_gap(t, ts);
    SphereOptions so = opt.sphere;
    so.seed = opt.seed;
    const double up = support_function(t, q, 0.5 * kPi, so);
    const double down = support_function(t, q, 1.5 * kPi, so);
    const double max_im = std::max({up, down, 0.0});
    add(r, "selfadjoint_defect", sa);
    add(r, "max_imag", max_im);
    r.conclusion_ok = r.premises_ok && sa <= 1e-6 && max_im <= 1e-6;
    if (!hypo) r.notes = "operator is not hyponormal";
    else if (sim > 1e-8) r.notes = "X^{-1} T X differs from T^*";
    else if (zero.contains) r.notes = "origin lies in W_q(X^{-1})";
    else if (!r.conclusion_ok) r.notes = "premises hold but W_q(T) is not contained in the real line";
    return r;
}

// ---------------------------------------------------------------- T4

TheoremReport run_convergence(const std::vector<Complex>& eigenvalues, Complex q, const std::vector<int>& dims,
                              int n_theta, const HarnessOptions& opt) {
    check_q(q);
    if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "no truncation sizes given");
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw Error(ErrorCode::InvalidArgument, "truncation sizes must be positive");
        if (i > 0 && dims[i] <= dims[i - 1]) throw Error(ErrorCode::InvalidArgument, "truncation sizes must ascend");
    }
    const std::size_t top = static_cast<std::size_t>(dims.back());
    if (eigenvalues.size() < top) throw Error(ErrorCode::InvalidArgument, "eigenvalue list shorter than the largest size");
    const std::size_t ambient = top + 1;

    TheoremReport r;
    r.id = TheoremId::T4;
    r.premises_ok = true;
    const auto grid = theta_grid(n_theta);
    std::vector<CMat> ops;
    std::vector<Table> tabs;
    for (int d : dims) {
        CMat tn(ambient);
        for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) tn(i, i) = eigenvalues[i];
        tabs.push_back(make_table(tn, q, grid, opt.table));
        ops.push_back(std::move(tn));
    }
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = 0; j < ops.size(); ++j)
            if (i != j) lift(tabs[i], ops[i], q, grid, tabs[j].x);

    const std::size_t last = ops.size() - 1;
    bool monotone = true, lipschitz = true;
    double prev = 1e300, final_dh = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const int n = dims[i];
        const double dh = hausdorff(tabs[i].h, tabs[last].h);
        const double gap = op_gap(ops[i], ops[last]);
        add(r, "dH_" + std::to_string(n), dh);
        if (std::abs(q) > 0.0) {
            const double limit = 2.0 / std::abs(q) * gap;
            add(r, "lipschitz_" + std::to_string(n), dh - limit);
            if (dh > limit + 1e-6) lipschitz = false;
        }
        const double margin = *std::min_element(tabs[i].h.begin(), tabs[i].h.end());
        add(r, "zero_margin_" + std::to_string(n), margin);
        if (dh > prev + 1e-6) monotone = false;
        prev = dh;
        if (i + 1 == last || (last == 0 && i == 0)) final_dh = dh;
        if (std::abs(q - Complex(0.5)) < 1e-15) {
            AdmissiblePair p;
            p.q = q;
            p.x.assign(ambient, Complex{});
            p.y.assign(ambient, Complex{});
            const std::size_t pos = static_cast<std::size_t>(n) - 1;
            p.x[0] = 0.5;
            p.y[0] = -0.5;
            p.x[pos] += std::sqrt(3.0) / 2.0;
            p.y[pos] += std::sqrt(3.0) / 2.0;
            add(r, "witness_" + std::to_string(n), pair_value(ops[i], p).real());
        }
    }
    add(r, "final_dH", final_dh);
    add(r, "monotone", monotone ? 1.0 : 0.0);
    r.conclusion_ok = monotone && lipschitz && final_dh <= 1e-3;
    r.notes = "truncations embedded in dimension " + std::to_string(ambient);
    return r;
}

// ---------------------------------------------------------------- T5

TheoremReport check_thm5(const CMat& t, Complex q, int n_theta, const HarnessOptions& opt) {
    check_q(q);
    TheoremReport r;
    r.id = TheoremId::T5;
    r.premises_ok = true;
    const CMat at = aluthge(t);
    const CMat ts = adjoint(t);
    const auto grid = theta_grid(n_theta);
    const std::size_t m = grid.size();
    Table ha = make_table(at, q, grid, opt.table);
    Table ht = make_table(t, q, grid, opt.table);
    Table hs = make_table(ts, q, grid, opt.table);
    for (int pass = 0; pass < 2; ++pass) {
        lift(ht, t, q, grid, hs.x);
        lift(ht, t, q, grid, ha.x);
        lift(hs, ts, q, grid, ht.x);
        lift(hs, ts, q, grid, ha.x);
    }
    double violation = -1e300, reflect = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        violation = std::max(violation, ha.h[k] - std::max(ht.h[k], hs.h[k]));
        reflect = std::max(reflect, std::abs(ha.h[k] - ha.h[(m - k) % m]));
    }
    const double aq = std::min(std::abs(q), 1.0);
    const double wa = omega_q(at, aq, opt.sphere).value;
    const double wt = omega_q(t, aq, opt.sphere).value;
    const double ws = omega_q(ts, aq, opt.sphere).value;
    add(r, "inclusion_violation", violation);
    add(r, "radius_excess", wa - std::max(wt, ws));
    add(r, "reflection_defect", reflect);
    add(r, "aluthge_norm_excess", spectral_norm(at) - spectral_norm(t));
    r.conclusion_ok = violation <= 1e-5 && wa - std::max(wt, ws) <= 1e-6;
    return r;
}

// ---------------------------------------------------------------- T6

TheoremReport run_perturbation(const CMat& t, Complex q, const std::vector<std::uint64_t>& seeds,
                               const std::vector<double>& eps_grid, int n_theta, const HarnessOptions& opt) {
    check_q(q);
    if (std::abs(q) == 0.0) throw Error(ErrorCode::QZero, "the perturbation constant 2/q needs q != 0");
    TheoremReport r;
    r.id = TheoremId::T6;
    r.premises_ok = true;
    const auto grid = theta_grid(n_theta);
    const Table base = make_table(t, q, grid, opt.table);
    const double constant = 2.0 / std::abs(q);
    double fwd_excess = -1e300, dh_excess = -1e300, worst_ratio = 0.0;
    int trials = 0, passed = 0;
    for (std::uint64_t seed : seeds) {
        for (std::size_t e = 0; e < eps_grid.size(); ++e) {
            const double eps = eps_grid[e];
            Rng rng = make_rng(seed, 0x6e00 + e);
            CMat k = random_gaussian(rng, t.dim());
            const double kn = spectral_norm(k);
            k *= eps / kn;
            const double knorm = spectral_norm(k);
            const CMat tk = t + k;
            Table pert = make_table(tk, q, grid, opt.table, &base.x);
            Table mine = base;
            lift(mine, t, q, grid, pert.x);
            lift(pert, tk, q, grid, mine.x);
            double deficit = -1e300;
            for (std::size_t i = 0; i < grid.size(); ++i) deficit = std::max(deficit, mine.h[i] - pert.h[i]);
            const double dh = hausdorff(mine.h, pert.h);
            fwd_excess = std::max(fwd_excess, deficit - knorm);
            dh_excess = std::max(dh_excess, dh - constant * knorm);
            if (knorm > 0.0) worst_ratio = std::max(worst_ratio, dh / knorm);
            ++trials;
            if (deficit <= knorm + 1e-6 && dh <= constant * knorm + 1e-6) ++passed;
        }
    }
    add(r, "trials", trials);
    add(r, "passed", passed);
    add(r, "forward_excess", trials ? fwd_excess : 0.0);
    add(r, "dh_excess", trials ? dh_excess : 0.0);
    add(r, "max_ratio", worst_ratio);
    add(r, "constant", constant);
    r.conclusion_ok = passed == trials;
    return r;
}

}  // namespace qnr
