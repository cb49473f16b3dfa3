// Acceptance runner: one PASS/FAIL line per criterion, tolerances as published
// in the README. Exit status is 0 when every failing criterion is on the
// documented blocked list, 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "oracles.hpp"
#include "qnr/bounds.hpp"
#include "qnr/cli/fixtures.hpp"
#include "qnr/cli/report.hpp"
#include "qnr/cli/verify.hpp"
#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"
#include "qnr/random.hpp"
#include "qnr/structure.hpp"

using namespace qnr;
using nlohmann::json;

namespace {

const Complex I{0.0, 1.0};

// Criterion 4 asks for T = [[1,i],[i,-1]] to be symmetric under the coordinate
// swap; C T* C is [[-1,i],[i,1]] for that conjugation, so it cannot pass.
const std::set<int> kBlocked{4};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double metric(const TheoremReport& r, const std::string& name) { return r.metric(name); }

// ------------------------------------------------------------------ 1
Outcome c1() {
    Outcome o;
    const CMat t = CMat::diagonal({2.0, 1.0});
    const auto p = make_profile(t);
    o.require(std::abs(p.norm - 2.0) <= 1e-5, "norm " + fmt("%.9g", p.norm));
    o.require(std::abs(p.norm_sym - 8.0) <= 1e-5, "|T*T+TT*| " + fmt("%.9g", p.norm_sym));
    o.require(std::abs(p.sigma_min * p.sigma_min - 1.0) <= 1e-5, "sigma_min^2 " + fmt("%.9g", p.sigma_min * p.sigma_min));
    double worst = 0.0;
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
        worst = std::max(worst, std::abs(omega_q(t, q).value - (1.5 * q + 0.5)));
    o.require(worst <= 1e-5, "omega_q grid err " + fmt("%.2e", worst));
    const double r0 = eval_thm_q1(t, 0.0).rhs, r5 = eval_thm_q1(t, 0.5).rhs;
    const auto r1 = eval_thm_q1(t, 1.0);
    o.require(std::abs(r0 - 3.0) <= 1e-3, "R(0) " + fmt("%.6f", r0));
    o.require(std::abs(r5 - 4.982) <= 1e-3, "R(0.5) " + fmt("%.6f", r5));
    o.require(std::abs(r1.rhs - 4.0) <= 1e-3, "R(1) " + fmt("%.6f", r1.rhs));
    o.require(std::abs(r1.slack) <= 1e-6, "slack at q=1 " + fmt("%.2e", r1.slack));
    return o;
}

// ------------------------------------------------------------------ 2
Outcome c2() {
    Outcome o;
    double e1 = 0.0, e0 = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const CMat t = sample_ensemble(Ensemble::Random, 2 + i % 5, splitmix64(0xacce97 + i));
        const double w = numerical_radius(t).value;
        const double m = transcendental_radius(t).value;
        e1 = std::max(e1, std::abs(omega_q(t, 1.0).value - w) / w);
        e0 = std::max(e0, std::abs(omega_q(t, 0.0).value - m) / m);
    }
    o.require(e1 <= 1e-5, "max rel |omega_1 - w| " + fmt("%.2e", e1));
    o.require(e0 <= 1e-5, "max rel |omega_0 - m| " + fmt("%.2e", e0));
    return o;
}

// ------------------------------------------------------------------ 3 and 9
cli::VerifyConfig big_config() {
    cli::VerifyConfig cfg;
    cfg.count = 1000;
    cfg.q_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    cfg.seed = 20240611;
    return cfg;
}

json g_report;

// Re-evaluates one archived violation from its seed and compares the row bit for bit.
bool replay(const cli::VerifyConfig& cfg, const json& v) {
    const auto id = parse_bound_id(v["invariant"].get<std::string>());
    if (!id) return true;  // not a bound row
    const CMat t = sample_ensemble(cfg.ensemble, v["dim"].get<std::size_t>(), v["seed"].get<std::uint64_t>());
    BoundOptions bo;
    bo.sphere.restarts = cfg.restarts;
    bo.recheck_restarts = cfg.recheck_restarts;
    const double q = v["q"].get<double>();
    for (const auto& r : bound_sweep(t, cfg.q_grid, bo))
        if (r.id == *id && r.q == q) return !r.holds && r.rhs == v["rhs"].get<double>() && r.slack == v["slack"].get<double>();
    return false;
}

Outcome c3() {
    Outcome o;
    const auto cfg = big_config();
    const auto res = cli::run_verify(cfg);
    g_report = res.report;
    for (const char* name : {"NORM", "LOWER_NORM", "QUAD_Q", "TRANS_Q", "THM_Q5", "QN1", "QN2"}) {
        const auto& row = res.report["certified"][name];
        const long fail = row["fail"].get<long>();
        const double worst = row["worst"].get<double>();
        o.require(fail == 0 && worst <= 1e-6,
                  std::string(name) + " " + std::to_string(row["pass"].get<long>()) + "/" +
                      std::to_string(row["pass"].get<long>() + fail));
    }
    // Replay the archived violations (findings included) from their seeds.
    int replayed = 0, reproduced = 0;
    for (const auto& v : res.report["violations"]) {
        if (replayed >= 5) break;
        if (!parse_bound_id(v["invariant"].get<std::string>())) continue;
        ++replayed;
        if (replay(cfg, v)) ++reproduced;
    }
    o.require(reproduced == replayed, "replayed " + std::to_string(reproduced) + "/" + std::to_string(replayed));
    return o;
}

// ------------------------------------------------------------------ 4
Outcome c4() {
    Outcome o;
    const CMat t{{1.0, I}, {I, -1.0}};
    const auto swap = ConjugationSpec::swap(2);
    const double defect = complex_symmetry_defect(t, swap);
    o.require(is_complex_symmetric(t, swap), "swap-symmetric (defect " + fmt("%.3g", defect) + ")");
    // The inclusion itself does not depend on C; T = T^T, so run it under the
    // standard conjugation.
    const auto std2 = ConjugationSpec::standard(2);
    const auto half = check_thm2(t, std2, 0.5, 90);
    o.require(metric(half, "inclusion_violation") <= 1e-5,
              "inclusion violation " + fmt("%.2e", metric(half, "inclusion_violation")));
    const auto zero = check_thm2(t, std2, 0.0, 90);
    o.require(metric(zero, "circularity_defect") <= 1e-5,
              "circularity defect " + fmt("%.2e", metric(zero, "circularity_defect")));
    return o;
}

// ------------------------------------------------------------------ 5
Outcome c5() {
    Outcome o;
    std::vector<Complex> eig;
    for (int k = 1; k <= 25; ++k) eig.emplace_back(1.0 / k, 0.0);
    const std::vector<int> dims{2, 4, 8, 16, 24};
    const auto r = run_convergence(eig, 0.5, dims, 180);
    double werr = 0.0, rise = 0.0, prev = INFINITY;
    for (int n : dims) {
        werr = std::max(werr, std::abs(metric(r, "witness_" + std::to_string(n)) - (-0.25 + 0.75 / n)));
        const double d = metric(r, "dH_" + std::to_string(n));
        rise = std::max(rise, d - prev);
        prev = d;
    }
    o.require(werr <= 1e-12, "witness err " + fmt("%.1e", werr));
    o.require(rise <= 1e-6, "max dH increase " + fmt("%.1e", std::max(rise, 0.0)));
    o.require(metric(r, "final_dH") <= 2e-2, "final dH " + fmt("%.4e", metric(r, "final_dH")));
    return o;
}

// ------------------------------------------------------------------ 6
Outcome c6() {
    Outcome o;
    std::vector<CMat> mats{CMat{{2.0, 1.0}, {0.0, 1.0}}};
    for (std::uint64_t i = 0; i < 50; ++i) mats.push_back(sample_ensemble(Ensemble::Random, 3, splitmix64(0xa1u + i)));
    double viol = 0.0, excess = -INFINITY, eig = 0.0;
    for (const auto& t : mats) {
        for (double q : {0.3, 0.7}) {
            const auto r = check_thm5(t, q, 90);
            viol = std::max(viol, metric(r, "inclusion_violation"));
            excess = std::max(excess, metric(r, "radius_excess"));
        }
        eig = std::max(eig, oracle::multiset_gap(eigenvalues(aluthge(t)), eigenvalues(t)));
    }
    o.require(viol <= 1e-4, "max support violation " + fmt("%.2e", viol));
    o.require(excess <= 1e-6, "max radius excess " + fmt("%.2e", excess));
    o.require(eig <= 1e-7, "eigenvalue gap " + fmt("%.2e", eig));
    return o;
}

// ------------------------------------------------------------------ 7
Outcome c7() {
    Outcome o;
    std::vector<CMat> mats{CMat::diagonal({2.0, 1.0})};
    for (std::uint64_t i = 0; i < 20; ++i) mats.push_back(sample_ensemble(Ensemble::Random, 4, splitmix64(0x57ab + i)));
    long trials = 0, passed = 0;
    double fwd = -INFINITY, dh = -INFINITY;
    for (const auto& t : mats)
        for (double q : {0.25, 0.5, 1.0}) {
            const auto r = run_perturbation(t, q, {1}, {1e-3, 1e-2, 1e-1}, 90);
            trials += static_cast<long>(metric(r, "trials"));
            passed += static_cast<long>(metric(r, "passed"));
            fwd = std::max(fwd, metric(r, "forward_excess"));
            dh = std::max(dh, metric(r, "dh_excess"));
        }
    o.require(passed == trials, std::to_string(passed) + "/" + std::to_string(trials) + " trials");
    o.require(fwd <= 1e-6, "max forward excess " + fmt("%.2e", fwd));
    o.require(dh <= 1e-6, "max dH excess " + fmt("%.2e", dh));
    return o;
}

// ------------------------------------------------------------------ 8
Outcome c8() {
    Outcome o;
    const double w = numerical_radius(CMat{{2.0, 1.0}, {0.0, 1.0}}).value;
    o.require(std::abs(w - (1.5 + std::numbers::sqrt2 / 2.0)) <= 1e-6, "w " + fmt("%.9f", w));
    const auto [stated, proved] = eval_thm_q3(CMat::identity(2), CMat::identity(2), 1.0);
    o.require(std::abs(stated.rhs - 1.0) <= 1e-9 && std::abs(stated.omega_est - 2.0) <= 1e-9 && !stated.holds,
              "stated rhs " + fmt("%.6g", stated.rhs) + " < omega " + fmt("%.6g", stated.omega_est));
    o.require(std::abs(proved.rhs - 2.0) <= 1e-9 && proved.holds, "proved rhs " + fmt("%.6g", proved.rhs));
    const auto fx = cli::fixtures_json(cli::run_fixtures());
    const auto& f = fx["findings"];
    for (const char* id : {"q5_example.w", "q3_counterexample.stated_slack"})
        o.require(std::find(f.begin(), f.end(), id) != f.end(), std::string("finding ") + id);
    return o;
}

// ------------------------------------------------------------------ 9
Outcome c9() {
    Outcome o;
    const auto& find = g_report["findings"];
    const auto& viol = g_report["violations"];
    for (const char* name : {"THM_Q1", "THM_Q2", "THM_Q3_PROVED", "THM_Q4", "THM_Q6"}) {
        if (!find.contains(name)) {
            o.require(false, std::string(name) + " missing");
            continue;
        }
        const auto& row = find[name];
        const long fail = row["fail"].get<long>();
        const bool witnessed =
            fail == 0 || std::any_of(viol.begin(), viol.end(), [&](const json& v) {
                return v["invariant"] == name && v.contains("seed") && v.contains("witness");
            });
        o.require(row.contains("hold_rate") && witnessed,
                  std::string(name) + " hold " + fmt("%.4f", row["hold_rate"].get<double>()));
    }
    return o;
}

// ------------------------------------------------------------------ 10
Outcome c10() {
    Outcome o;
    auto cfg = big_config();
    cfg.count = 40;
    const std::string a = cli::dump(cli::run_verify(cfg).report);
    const std::string b = cli::dump(cli::run_verify(cfg).report);
    o.require(a == b, "two runs byte-identical (" + std::to_string(a.size()) + " bytes)");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0: no runtime bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "diag(2,1) fixture values", 5.0, c1},
        {2, "anchor identities on 200 matrices", 120.0, c2},
        {3, "certified bounds on 1000 matrices", 900.0, c3},
        {4, "complex symmetric fixture", 0.0, c4},
        {5, "diagonal truncation convergence", 180.0, c5},
        {6, "Aluthge inclusion", 0.0, c6},
        {7, "perturbation stability", 0.0, c7},
        {8, "documented discrepancies", 0.0, c8},
        {9, "new-bound hold-rate report", 0.0, c9},
        {10, "verify determinism", 0.0, c10},
    };
    int failed = 0, unexpected = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0) o.require(secs < c.budget_s, fmt("%.1fs", secs) + " < " + fmt("%.0fs", c.budget_s));
        else o.detail += "; " + fmt("%.1fs", secs);
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) {
            ++failed;
            if (!kBlocked.count(c.id)) ++unexpected;
        }
    }
    std::printf("%zu criteria, %d passed, %d failed (%d on the documented blocked list)\n", all.size(),
                static_cast<int>(all.size()) - failed, failed, failed - unexpected);
    return unexpected == 0 ? 0 : 1;
}
