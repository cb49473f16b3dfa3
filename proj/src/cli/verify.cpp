#include "qnr/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qnr/bounds.hpp"
#include "qnr/cli/report.hpp"
#include "qnr/radii.hpp"
#include "qnr/structure.hpp"

namespace qnr::cli {

namespace {

bool certified_bound(BoundId id) {
    switch (id) {
    case BoundId::NORM:
    case BoundId::LOWER_NORM:
    case BoundId::QUAD_Q:
    case BoundId::TRANS_Q:
    case BoundId::THM_Q5:
    case BoundId::QN1:
    case BoundId::QN2: return true;
    default: return false;
    }
}

struct Tally {
    bool certified = true;
    long pass = 0;
    long fail = 0;
    json violations = json::array();
    double worst = 0.0;  // largest error (or most negative slack, negated)
};

class Ledger {
public:
    explicit Ledger(int cap) : cap_(cap) {}

    void record(const std::string& name, bool certified, bool ok, double err, const json& detail) {
        auto& t = tallies_[name];
        t.certified = certified;
        t.worst = std::max(t.worst, err);
        if (ok) {
            ++t.pass;
            return;
        }
        ++t.fail;
        if (static_cast<int>(t.violations.size()) < cap_) t.violations.push_back(detail);
    }

    bool certified_ok() const {
        return std::all_of(tallies_.begin(), tallies_.end(),
                           [](const auto& kv) { return !kv.second.certified || kv.second.fail == 0; });
    }

    json to_json() const {
        json cert = json::object(), find = json::object(), viol = json::array();
        for (const auto& [name, t] : tallies_) {
            const long total = t.pass + t.fail;
            json row = {{"pass", t.pass},
                        {"fail", t.fail},
                        {"hold_rate", total ? static_cast<double>(t.pass) / static_cast<double>(total) : 1.0},
                        {"worst", t.worst}};
            (t.certified ? cert : find)[name] = std::move(row);
            for (const auto& v : t.violations) {
                json e = v;
                e["invariant"] = name;
                e["certified"] = t.certified;
                viol.push_back(std::move(e));
            }
        }
        return {{"certified", std::move(cert)}, {"findings", std::move(find)}, {"violations", std::move(viol)}};
    }

private:
    int cap_;
    std::map<std::string, Tally> tallies_;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

std::uint64_t matrix_seed(std::uint64_t seed, std::size_t index) {
    return splitmix64(seed ^ splitmix64(0x7e51f00dULL + index));
}

VerifyResult run_verify(const VerifyConfig& cfg) {
    if (cfg.count < 1) throw Error(ErrorCode::InvalidArgument, "count must be at least 1");
    if (cfg.dims.empty()) throw Error(ErrorCode::InvalidArgument, "no dimensions given");
    for (int d : cfg.dims)
        if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimensions must be positive");
    if (cfg.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
    if (cfg.n_theta < 16) throw Error(ErrorCode::InvalidArgument, "n_theta must be at least 16");

    BoundOptions bo;
    bo.sphere.restarts = cfg.restarts;
    bo.sphere.exec = cfg.exec;
    bo.recheck_restarts = cfg.recheck_restarts;
    bo.exec = cfg.exec;
    bo.pencil.exec = cfg.exec;

    Ledger ledger(cfg.max_witnesses);
    const bool has0 = std::find(cfg.q_grid.begin(), cfg.q_grid.end(), 0.0) != cfg.q_grid.end();
    const bool has1 = std::find(cfg.q_grid.begin(), cfg.q_grid.end(), 1.0) != cfg.q_grid.end();
    const auto thetas = theta_grid(cfg.n_theta);

    for (int i = 0; i < cfg.count; ++i) {
        const std::size_t dim = static_cast<std::size_t>(cfg.dims[static_cast<std::size_t>(i) % cfg.dims.size()]);
        const std::uint64_t seed = matrix_seed(cfg.seed, static_cast<std::size_t>(i));
        const CMat t = sample_ensemble(cfg.ensemble, dim, seed);
        const json where = {{"index", i}, {"seed", seed}, {"dim", dim}};
        auto at = [&](json extra) {
            json d = where;
            for (auto& [k, v] : extra.items()) d[k] = v;
            return d;
        };

        // Bound catalog.
        const auto rows = bound_sweep(t, cfg.q_grid, bo);
        double w = 0.0, m = 0.0, omega1 = -1.0, omega0 = -1.0;
        for (const auto& r : rows) {
            const bool cert = certified_bound(r.id);
            json d = at({{"q", r.q}, {"slack", r.slack}, {"rhs", r.rhs}, {"omega_est", r.omega_est}});
            d["witness"] = r.witness ? vector_json(*r.witness) : json(nullptr);
            ledger.record(std::string(to_string(r.id)), cert, r.holds, std::max(0.0, -r.slack), d);
            if (r.id == BoundId::TRANS_Q) {
                for (const auto& [k, v] : r.components) {
                    if (k == "w") w = v;
                    if (k == "m") m = v;
                }
                if (r.q == 1.0) omega1 = r.omega_est;
                if (r.q == 0.0) omega0 = r.omega_est;
            }
        }
        const double norm = spectral_norm(t);

        if (has1) {
            const double e = rel_err(omega1, w);
            ledger.record("ANCHOR_OMEGA1_W", true, e <= cfg.tol_anchor || std::abs(omega1 - w) <= 1e-14, e,
                          at({{"omega_1", omega1}, {"w", w}}));
        }
        if (has0) {
            const double e = rel_err(omega0, m);
            ledger.record("ANCHOR_OMEGA0_M", true, e <= cfg.tol_anchor || std::abs(omega0 - m) <= 1e-14, e,
                          at({{"omega_0", omega0}, {"m", m}}));
        }
        {
            const double tol = 1e-9 * std::max(norm, 1e-300);
            const bool ok = w <= norm + tol && norm <= 2.0 * w + tol;
            ledger.record("W_NORM_SANDWICH", true, ok, std::max({0.0, w - norm, norm - 2.0 * w}),
                          at({{"w", w}, {"norm", norm}}));
        }

        // Spectral inclusion for normal members.
        if (dim >= 2 && is_normal(t)) {
            const auto eig = eigenvalues(t);
            TableOptions to;
            to.restarts = 4;
            to.exec = cfg.exec;
            for (double q : cfg.q_grid) {
                const auto tab = support_table(t, q, thetas, to);
                double slack = 1e300;
                Complex worst_l{};
                for (const auto& l : eig)
                    for (std::size_t k = 0; k < thetas.size(); ++k) {
                        const double s = tab[k].value - (std::polar(1.0, -thetas[k]) * q * l).real();
                        if (s < slack) {
                            slack = s;
                            worst_l = l;
                        }
                    }
                ledger.record("SPECTRAL_INCLUSION", true, slack >= -cfg.tol_inclusion, std::max(0.0, -slack),
                              at({{"q", q}, {"slack", slack}, {"eigenvalue", complex_json(worst_l)}}));
            }
        }

        // Aluthge transform and polar factors.
        {
            const auto p = polar(t);
            const double recon = spectral_norm(p.isometry * p.modulus - t);
            ledger.record("POLAR_RECONSTRUCTION", true, recon <= 1e-9 * std::max(norm, 1e-300) || recon <= 1e-14,
                          recon, at({{"error", recon}}));
            const CMat a = aluthge(t);
            const auto ca = char_poly(a), ct = char_poly(t);
            const double scale = std::max(norm, 1.0);
            double err = 0.0;
            for (std::size_t k = 1; k < ca.size(); ++k)
                err = std::max(err, std::abs(ca[k] - ct[k]) / std::pow(scale, static_cast<double>(k)));
            ledger.record("ALUTHGE_SPECTRUM", true, err <= cfg.tol_aluthge, err, at({{"error", err}}));
            const double excess = spectral_norm(a) - norm;
            ledger.record("ALUTHGE_CONTRACTION", true, excess <= 1e-9, std::max(0.0, excess),
                          at({{"excess", excess}}));
        }
    }

    json report = ledger.to_json();
    report["config"] = {{"ensemble", std::string(to_string(cfg.ensemble))},
                        {"dims", cfg.dims},
                        {"count", cfg.count},
                        {"q_grid", cfg.q_grid},
                        {"seed", cfg.seed},
                        {"restarts", cfg.restarts},
                        {"recheck_restarts", cfg.recheck_restarts},
                        {"n_theta", cfg.n_theta},
                        {"tol_anchor", cfg.tol_anchor},
                        {"tol_inclusion", cfg.tol_inclusion},
                        {"tol_aluthge", cfg.tol_aluthge},
                        {"hold_slack", kHoldSlack}};
    VerifyResult out;
    out.certified_ok = ledger.certified_ok();
    report["certified_ok"] = out.certified_ok;
    out.report = std::move(report);
    return out;
}

}  // namespace qnr::cli
