#include "qnr/cli/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qnr/bounds.hpp"
#include "qnr/radii.hpp"
#include "qnr/structure.hpp"

namespace qnr::cli {

namespace {

std::string tag(const char* base, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s[%g]", base, v);
    return buf;
}

void push(std::vector<Fixture>& out, std::string id, std::string desc, double computed, double reference, double tol,
          Relation rel = Relation::Equal) {
    Fixture f{std::move(id), std::move(desc), computed, reference, tol, rel, false};
    f.agrees = rel == Relation::Equal ? std::abs(computed - reference) <= tol : computed >= reference - tol;
    out.push_back(std::move(f));
}

void diag_example(std::vector<Fixture>& out, const SphereOptions& sphere) {
    const CMat t = CMat::diagonal({2.0, 1.0});
    const CMat ts = adjoint(t);
    push(out, "q1_example.norm", "|T| for diag(2,1)", spectral_norm(t), 2.0, 1e-12);
    push(out, "q1_example.norm_sym", "|T*T + TT*| for diag(2,1)", spectral_norm(ts * t + t * ts), 8.0, 1e-12);
    const double smin = sigma_min(t);
    push(out, "q1_example.sigma_min_sq", "inf |Tx|^2 for diag(2,1)", smin * smin, 1.0, 1e-12);
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
        push(out, tag("q1_example.omega_q", q), "omega_q(diag(2,1)) against 3q/2 + 1/2", omega_q(t, q, sphere).value,
             1.5 * q + 0.5, 1e-5);
    BoundOptions bo;
    bo.sphere = sphere;
    const std::pair<double, double> published[] = {{0.0, 3.0}, {0.5, 4.982}, {1.0, 4.0}};
    for (auto [q, r] : published)
        push(out, tag("q1_example.rhs", q), "THM_Q1 right-hand side for diag(2,1)", eval_thm_q1(t, q, bo).rhs, r, 1e-3);
    const auto at1 = eval_thm_q1(t, 1.0, bo);
    push(out, "q1_example.equality_gap", "|rhs - omega^2| at q = 1 (equality case)",
         std::abs(at1.rhs - at1.omega_est * at1.omega_est), 0.0, 1e-6);
    const auto q6 = eval_thm_q6(t, 0.5, bo).second;
    push(out, "q6_example.normal_rhs", "THM_Q6_NORMAL right-hand side for diag(2,1), q = 1/2", q6 ? q6->rhs : NAN,
         3.71875, 1e-9);
}

void jordan_example(std::vector<Fixture>& out, const SphereOptions& sphere) {
    const CMat t{{2.0, 1.0}, {0.0, 1.0}};
    const double norm = spectral_norm(t);
    const double w = numerical_radius(t).value;
    const double m = transcendental_radius(t).value;
    push(out, "q5_example.norm", "|T| for [[2,1],[0,1]]", norm, 2.288, 1e-3);
    push(out, "q5_example.w_closed_form", "w([[2,1],[0,1]]) against 3/2 + sqrt(2)/2", w,
         1.5 + std::numbers::sqrt2 / 2.0, 1e-6);
    push(out, "q5_example.w", "w([[2,1],[0,1]]) against the published 2.414", w, 2.414, 1e-3);
    push(out, "q5_example.m", "m([[2,1],[0,1]]) against the published 0.707", m, 0.707, 1e-3);
    BoundOptions bo;
    bo.sphere = sphere;
    struct Row {
        double q, omega, b;
    };
    const Row table[] = {{0.0, 1.581, 0.707}, {0.2, 1.732, 1.152}, {0.4, 1.887, 1.556},
                         {0.6, 2.045, 1.918}, {0.8, 2.207, 2.207}, {1.0, 2.414, 2.414}};
    for (const auto& r : table) {
        const auto rep = eval_thm_q5(t, r.q, bo);
        push(out, tag("q5_example.omega_q", r.q), "omega_q([[2,1],[0,1]]) against the published table", rep.omega_est,
             r.omega, 1e-3);
        push(out, tag("q5_example.bound", r.q), "THM_Q5 bound against the published table", rep.rhs, r.b, 1e-3);
        push(out, tag("q5_example.slack", r.q), "THM_Q5 slack with recomputed inputs", rep.slack, 0.0, 1e-6,
             Relation::AtLeast);
    }
}

void anticommutator_example(std::vector<Fixture>& out, const SphereOptions& sphere) {
    const CMat i2 = CMat::identity(2);
    BoundOptions bo;
    bo.sphere = sphere;
    const auto [stated, proved] = eval_thm_q3(i2, i2, 1.0, bo);
    push(out, "q3_counterexample.omega", "omega_1(AB + BA) for A = B = I", stated.omega_est, 2.0, 1e-9);
    push(out, "q3_counterexample.stated_slack", "stated THM_Q3 rhs minus omega for A = B = I, q = 1", stated.slack,
         0.0, 1e-6, Relation::AtLeast);
    push(out, "q3_counterexample.proved_slack", "THM_Q3 rhs from the proof minus omega for A = B = I, q = 1",
         proved.slack, 0.0, 1e-6, Relation::AtLeast);
}

void symmetric_example(std::vector<Fixture>& out) {
    const Complex i{0.0, 1.0};
    const CMat t{{1.0, i}, {i, -1.0}};
    push(out, "csym_example.swap_defect", "|T - C T* C| for [[1,i],[i,-1]] with the coordinate swap",
         complex_symmetry_defect(t, ConjugationSpec::swap(2)), 0.0, 1e-10);
    push(out, "csym_example.standard_defect", "|T - C T* C| for [[1,i],[i,-1]] with entrywise conjugation",
         complex_symmetry_defect(t, ConjugationSpec::standard(2)), 0.0, 1e-10);
}

void interval_example(std::vector<Fixture>& out, const SphereOptions& sphere) {
    const CMat t = CMat::diagonal({2.0, 1.0});
    const double pi = std::numbers::pi;
    const double up = support_function(t, 0.5, 0.5 * pi, sphere);
    push(out, "hyponormal_example.max_imag", "sup Im W_{1/2}(diag(2,1)), claimed 0 for a real interval", up, 0.0, 1e-6);
    const double a = std::sqrt(1.75);
    push(out, "hyponormal_example.left_end", "min Re W_{1/2}(diag(2,1)) against the published endpoint",
         -support_function(t, 0.5, pi, sphere), (3.0 - a) / 2.0, 1e-6);
    push(out, "hyponormal_example.right_end", "max Re W_{1/2}(diag(2,1)) against the published endpoint",
         support_function(t, 0.5, 0.0, sphere), (3.0 + a) / 2.0, 1e-6);
}

void truncation_example(std::vector<Fixture>& out) {
    const std::size_t big = 25;
    CMat limit(big);
    for (std::size_t k = 0; k < big - 1; ++k) limit(k, k) = 1.0 / static_cast<double>(k + 1);
    for (int n : {2, 4, 8, 16, 24}) {
        CMat tn(big);
        for (int k = 0; k < n; ++k) tn(k, k) = 1.0 / (k + 1.0);
        AdmissiblePair p{CVec(big), CVec(big), 0.5};
        p.x[0] = 0.5;
        p.y[0] = -0.5;
        p.x[n - 1] += std::sqrt(3.0) / 2.0;
        p.y[n - 1] += std::sqrt(3.0) / 2.0;
        push(out, tag("truncation_example.witness", n), "<T_n x_n, y_n> against -1/4 + 3/(4n)", pair_value(tn, p).real(),
             -0.25 + 3.0 / (4.0 * n), 1e-12);
        if (n < 24)
            push(out, tag("truncation_example.norm_gap", n), "|T_n - T_24| against 1/(n+1)", spectral_norm(tn - limit),
                 1.0 / (n + 1.0), 1e-12);
    }
    push(out, "truncation_example.witness_limit", "limit of -1/4 + 3/(4n), claimed to be 0", -0.25, 0.0, 1e-6);
}

}  // namespace

std::vector<Fixture> run_fixtures(const SphereOptions& sphere) {
    std::vector<Fixture> out;
    diag_example(out, sphere);
    jordan_example(out, sphere);
    anticommutator_example(out, sphere);
    symmetric_example(out);
    interval_example(out, sphere);
    truncation_example(out);
    return out;
}

nlohmann::json fixtures_json(const std::vector<Fixture>& fx) {
    using nlohmann::json;
    json items = json::array(), findings = json::array();
    int agree = 0;
    for (const auto& f : fx) {
        items.push_back({{"id", f.id},
                         {"description", f.description},
                         {"computed", f.computed},
                         {"reference", f.reference},
                         {"tol", f.tol},
                         {"relation", f.relation == Relation::Equal ? "equal" : "at_least"},
                         {"agrees", f.agrees}});
        if (f.agrees) ++agree;
        else findings.push_back(f.id);
    }
    return {{"fixtures", std::move(items)},
            {"findings", std::move(findings)},
            {"summary", {{"total", fx.size()}, {"agree", agree}, {"disagree", static_cast<int>(fx.size()) - agree}}}};
}

}  // namespace qnr::cli
