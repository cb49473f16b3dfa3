#include "qnr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "qnr/structure.hpp"

namespace qnr {

namespace {

constexpr BoundId kAllIds[] = {
    BoundId::NORM,          BoundId::LOWER_NORM,    BoundId::QUAD_Q, BoundId::QUAD_Q_CRAWFORD,
    BoundId::TRANS_Q,       BoundId::THM_Q1,        BoundId::THM_Q2, BoundId::THM_Q3_STATED,
    BoundId::THM_Q3_PROVED, BoundId::THM_Q4,        BoundId::THM_Q5, BoundId::THM_Q6,
    BoundId::THM_Q6_NORMAL, BoundId::QN1,           BoundId::QN2,
};

double s_of(double q) { return std::sqrt(std::max(0.0, 1.0 - q * q)); }

void check_real_q(double q) {
    if (!(q >= 0.0 && q <= 1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "q must lie in [0, 1]");
}

BoundReport finish(BoundId id, double q, double rhs, double omega, Power power, Side side, const std::string& digest,
                   std::vector<std::pair<std::string, double>> components, const CVec* witness) {
    BoundReport r;
    r.id = id;
    r.q = q;
    r.rhs = rhs;
    r.omega_est = omega;
    r.power = power;
    r.side = side;
    const double lhs = power == Power::Squared ? omega * omega : omega;
    switch (side) {
    case Side::Upper: r.slack = rhs - lhs; break;
    case Side::Lower: r.slack = lhs - rhs; break;
    case Side::Sandwich: {
        double lower = 0.0;
        for (const auto& [k, v] : components)
            if (k == "lower") lower = v;
        r.slack = std::min(rhs - lhs, lhs - lower);
        break;
    }
    }
    r.holds = r.slack >= kHoldSlack;
    if (witness && !witness->empty()) r.witness = *witness;
    r.inputs_digest = digest;
    r.components = std::move(components);
    return r;
}

double omega_or_zero(const CMat& t, double q, const SphereOptions& opt) {
    // A one-dimensional block has an empty W_q for q < 1; its radius is
    // taken as sup of the empty set, 0.
    if (t.dim() == 1 && q < 1.0 - 1e-12) return 0.0;
    return omega_q(t, q, opt).value;
}

SphereOptions serial(SphereOptions s, int restarts) {
    s.exec = Exec::Serial;
    s.restarts = restarts;
    return s;
}

}  // namespace

std::string_view to_string(BoundId id) {
    switch (id) {
    case BoundId::NORM: return "NORM";
    case BoundId::LOWER_NORM: return "LOWER_NORM";
    case BoundId::QUAD_Q: return "QUAD_Q";
    case BoundId::QUAD_Q_CRAWFORD: return "QUAD_Q_CRAWFORD";
    case BoundId::TRANS_Q: return "TRANS_Q";
    case BoundId::THM_Q1: return "THM_Q1";
    case BoundId::THM_Q2: return "THM_Q2";
    case BoundId::THM_Q3_STATED: return "THM_Q3_STATED";
    case BoundId::THM_Q3_PROVED: return "THM_Q3_PROVED";
    case BoundId::THM_Q4: return "THM_Q4";
    case BoundId::THM_Q5: return "THM_Q5";
    case BoundId::THM_Q6: return "THM_Q6";
    case BoundId::THM_Q6_NORMAL: return "THM_Q6_NORMAL";
    case BoundId::QN1: return "QN1";
    case BoundId::QN2: return "QN2";
    }
    return "?";
}

std::optional<BoundId> parse_bound_id(std::string_view name) {
    for (BoundId id : kAllIds)
        if (to_string(id) == name) return id;
    return std::nullopt;
}

std::string inputs_digest(const CMat& t, double q) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    };
    const std::uint64_t dim = t.dim();
    feed(&dim, sizeof dim);
    for (const auto& z : t.entries()) {
        const double re = z.real(), im = z.imag();
        feed(&re, sizeof re);
        feed(&im, sizeof im);
    }
    feed(&q, sizeof q);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

OperatorProfile make_profile(const CMat& t, const PencilOptions& pencil) {
    OperatorProfile p;
    p.norm = spectral_norm(t);
    p.norm_sq = spectral_norm(t * t);
    const CMat ts = adjoint(t);
    p.norm_sym = spectral_norm(ts * t + t * ts);
    p.sigma_min = sigma_min(t);
    const auto w = numerical_radius(t, pencil);
    p.w = w.value;
    p.w_witness = std::get<CVec>(w.witness);
    p.c = crawford(t, pencil).value;
    p.m = transcendental_radius(t).value;
    p.normal = is_normal(t);
    return p;
}

namespace rows {

BoundReport norm(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    return finish(BoundId::NORM, q, p.norm, om.value, Power::Linear, Side::Upper, digest, {{"norm", p.norm}},
                  &om.witness_x);
}

BoundReport lower_norm(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double rhs = q / (2.0 * (2.0 - q * q)) * p.norm;
    return finish(BoundId::LOWER_NORM, q, rhs, om.value, Power::Linear, Side::Lower, digest, {{"norm", p.norm}},
                  &om.witness_x);
}

BoundReport quad_q(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double s = s_of(q);
    const double rhs = q * q * p.w * p.w + (1.0 - q * q + q * s) * p.norm * p.norm;
    return finish(BoundId::QUAD_Q, q, rhs, om.value, Power::Squared, Side::Upper, digest,
                  {{"w", p.w}, {"norm", p.norm}}, &om.witness_x);
}

BoundReport quad_q_crawford(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double s = s_of(q);
    const double rhs = q * q * p.w * p.w + (1.0 - q * q + q * s) * p.norm * p.norm - (1.0 - q * q) * p.c * p.c;
    return finish(BoundId::QUAD_Q_CRAWFORD, q, rhs, om.value, Power::Squared, Side::Upper, digest,
                  {{"w", p.w}, {"norm", p.norm}, {"crawford", p.c}}, &om.witness_x);
}

BoundReport trans_q(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double rhs = q * p.w + s_of(q) * p.m;
    return finish(BoundId::TRANS_Q, q, rhs, om.value, Power::Linear, Side::Upper, digest, {{"w", p.w}, {"m", p.m}},
                  &om.witness_x);
}

BoundReport thm_q1(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double s = s_of(q);
    const double rhs = 0.5 * q * q * p.norm_sym + (1.0 - q * q + q * s) * p.norm * p.norm -
                       (1.0 - q * q) * p.sigma_min * p.sigma_min;
    return finish(BoundId::THM_Q1, q, rhs, om.value, Power::Squared, Side::Upper, digest,
                  {{"norm_sym", p.norm_sym}, {"norm", p.norm}, {"sigma_min", p.sigma_min}}, &om.witness_x);
}

BoundReport thm_q2(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double rhs = 0.5 * q * (p.norm + std::sqrt(p.norm_sq)) + s_of(q) * p.m;
    return finish(BoundId::THM_Q2, q, rhs, om.value, Power::Linear, Side::Upper, digest,
                  {{"norm", p.norm}, {"norm_sq", p.norm_sq}, {"m", p.m}}, &om.witness_x);
}

BoundReport thm_q5(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double s = s_of(q);
    const double b1 = q * p.w + s * p.m;
    const double b2 = std::sqrt(q * q * p.w * p.w + (1.0 - q * q + q * s) * p.norm * p.norm);
    return finish(BoundId::THM_Q5, q, std::min(b1, b2), om.value, Power::Linear, Side::Upper, digest,
                  {{"b1", b1}, {"b2", b2}}, &om.witness_x);
}

BoundReport thm_q6(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double s = s_of(q);
    const double n2 = p.norm * p.norm;
    const double rhs = q * q * p.w * p.w + (1.0 - q * q) * n2 -
                       0.5 * q * q * (1.0 - q * q) * (n2 - p.sigma_min * p.sigma_min) +
                       q * s * (p.w * p.norm - p.c * p.sigma_min);
    return finish(BoundId::THM_Q6, q, rhs, om.value, Power::Squared, Side::Upper, digest,
                  {{"w", p.w}, {"norm", p.norm}, {"sigma_min", p.sigma_min}, {"crawford", p.c}}, &om.witness_x);
}

BoundReport thm_q6_normal(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest) {
    const double n2 = p.norm * p.norm;
    const double rhs = n2 - 0.5 * q * q * (1.0 - q * q) * (n2 - p.sigma_min * p.sigma_min);
    return finish(BoundId::THM_Q6_NORMAL, q, rhs, om.value, Power::Squared, Side::Upper, digest,
                  {{"norm", p.norm}, {"sigma_min", p.sigma_min}}, &om.witness_x);
}

BoundReport qn1(const OperatorProfile& p, const std::string& digest) {
    const double rhs = 0.5 * (p.norm * p.norm + p.norm_sq);
    return finish(BoundId::QN1, 1.0, rhs, p.w, Power::Squared, Side::Upper, digest,
                  {{"norm", p.norm}, {"norm_sq", p.norm_sq}}, &p.w_witness);
}

BoundReport qn2(const OperatorProfile& p, const std::string& digest) {
    return finish(BoundId::QN2, 1.0, 0.5 * p.norm_sym, p.w, Power::Squared, Side::Sandwich, digest,
                  {{"lower", 0.25 * p.norm_sym}, {"norm_sym", p.norm_sym}}, &p.w_witness);
}

}  // namespace rows

namespace {

struct Prepared {
    OperatorProfile profile;
    OmegaEstimate omega;
    std::string digest;
};

Prepared prepare(const CMat& t, double q, const BoundOptions& opt) {
    check_real_q(q);
    return {make_profile(t, opt.pencil), omega_q(t, q, opt.sphere), inputs_digest(t, q)};
}

std::pair<BoundReport, BoundReport> q3_reports(const CMat& a, const CMat& b, double q, const SphereOptions& sphere,
                                               const PencilOptions& pencil, const std::string& digest) {
    const CMat ab = a * b;
    const CMat ac = anticommutator(a, b);
    const double w_ab = numerical_radius(ab, pencil).value;
    const double na = spectral_norm(a), nb = spectral_norm(b);
    const auto om = ac.dim() == 1 && q < 1.0 - 1e-12 ? OmegaEstimate{} : omega_q(ac, q, sphere);
    const double s = s_of(q);
    std::vector<std::pair<std::string, double>> comps{{"w_ab", w_ab}, {"norm_a", na}, {"norm_b", nb}};
    auto stated = finish(BoundId::THM_Q3_STATED, q, q * w_ab + s * 2.0 * na * nb, om.value, Power::Linear,
                         Side::Upper, digest, comps, &om.witness_x);
    auto proved = finish(BoundId::THM_Q3_PROVED, q, 2.0 * q * w_ab + 2.0 * s * na * nb, om.value, Power::Linear,
                         Side::Upper, digest, comps, &om.witness_x);
    return {std::move(stated), std::move(proved)};
}

BoundReport q4_report(const CMat& t, std::size_t k, double q, const SphereOptions& sphere, const OmegaEstimate& om,
                      const std::string& digest) {
    const auto parts = split_blocks(t, k);
    const double wa = omega_or_zero(parts.top_left, q, sphere);
    const double wd = omega_or_zero(parts.bottom_right, q, sphere);
    const double s = s_of(q);
    const double factor = std::sqrt(std::max(0.0, 1.0 - 0.75 * q * q + q * s));
    const double rhs = std::max(wa, wd) + factor * (parts.top_right_norm + parts.bottom_left_norm);
    return finish(BoundId::THM_Q4, q, rhs, om.value, Power::Linear, Side::Upper, digest,
                  {{"omega_a", wa},
                   {"omega_d", wd},
                   {"norm_b", parts.top_right_norm},
                   {"norm_c", parts.bottom_left_norm},
                   {"split", static_cast<double>(k)}},
                  &om.witness_x);
}

}  // namespace

std::vector<BoundReport> eval_norm_bounds(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    return {rows::norm(p.profile, q, p.omega, p.digest), rows::lower_norm(p.profile, q, p.omega, p.digest)};
}

std::vector<BoundReport> eval_intro_bounds(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    return {rows::quad_q(p.profile, q, p.omega, p.digest), rows::quad_q_crawford(p.profile, q, p.omega, p.digest),
            rows::trans_q(p.profile, q, p.omega, p.digest)};
}

BoundReport eval_thm_q1(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    return rows::thm_q1(p.profile, q, p.omega, p.digest);
}

BoundReport eval_thm_q2(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    return rows::thm_q2(p.profile, q, p.omega, p.digest);
}

std::pair<BoundReport, BoundReport> eval_thm_q3(const CMat& a, const CMat& b, double q, const BoundOptions& opt) {
    check_real_q(q);
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "anticommutator needs equal dimensions");
    return q3_reports(a, b, q, opt.sphere, opt.pencil, inputs_digest(anticommutator(a, b), q));
}

BoundReport eval_thm_q4(const CMat& a, const CMat& b, const CMat& c, const CMat& d, double q,
                        const BoundOptions& opt) {
    check_real_q(q);
    const CMat t = block(a, b, c, d);
    const auto om = omega_q(t, q, opt.sphere);
    return q4_report(t, a.dim(), q, opt.sphere, om, inputs_digest(t, q));
}

BoundReport eval_thm_q4_split(const CMat& t, std::size_t k, double q, const BoundOptions& opt) {
    check_real_q(q);
    const auto om = omega_q(t, q, opt.sphere);
    return q4_report(t, k, q, opt.sphere, om, inputs_digest(t, q));
}

BoundReport eval_thm_q5(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    return rows::thm_q5(p.profile, q, p.omega, p.digest);
}

std::pair<BoundReport, std::optional<BoundReport>> eval_thm_q6(const CMat& t, double q, const BoundOptions& opt) {
    const auto p = prepare(t, q, opt);
    std::optional<BoundReport> normal;
    if (p.profile.normal) normal = rows::thm_q6_normal(p.profile, q, p.omega, p.digest);
    return {rows::thm_q6(p.profile, q, p.omega, p.digest), std::move(normal)};
}

std::pair<BoundReport, BoundReport> eval_kittaneh(const CMat& t, const BoundOptions& opt) {
    const auto p = make_profile(t, opt.pencil);
    const auto digest = inputs_digest(t, 1.0);
    return {rows::qn1(p, digest), rows::qn2(p, digest)};
}

namespace {

std::vector<BoundReport> rows_for_q(const CMat& t, const OperatorProfile& prof, double q, int restarts,
                                    const BoundOptions& opt) {
    const SphereOptions sphere = serial(opt.sphere, restarts);
    const auto om = t.dim() == 1 && q < 1.0 - 1e-12 ? OmegaEstimate{} : omega_q(t, q, sphere);
    const auto digest = inputs_digest(t, q);
    std::vector<BoundReport> out{
        rows::norm(prof, q, om, digest),   rows::lower_norm(prof, q, om, digest),
        rows::quad_q(prof, q, om, digest), rows::quad_q_crawford(prof, q, om, digest),
        rows::trans_q(prof, q, om, digest), rows::thm_q1(prof, q, om, digest),
        rows::thm_q2(prof, q, om, digest),
    };
    auto [stated, proved] = q3_reports(t, adjoint(t), q, sphere, opt.pencil, digest);
    out.push_back(std::move(stated));
    out.push_back(std::move(proved));
    if (t.dim() >= 2) out.push_back(q4_report(t, t.dim() / 2, q, sphere, om, digest));
    out.push_back(rows::thm_q5(prof, q, om, digest));
    out.push_back(rows::thm_q6(prof, q, om, digest));
    if (prof.normal) out.push_back(rows::thm_q6_normal(prof, q, om, digest));
    if (std::abs(q - 1.0) <= 1e-12) {
        const auto d1 = inputs_digest(t, 1.0);
        out.push_back(rows::qn1(prof, d1));
        out.push_back(rows::qn2(prof, d1));
    }
    return out;
}

}  // namespace

std::vector<BoundReport> bound_sweep(const CMat& t, const std::vector<double>& q_grid, const BoundOptions& opt) {
    for (double q : q_grid) check_real_q(q);
    const OperatorProfile prof = make_profile(t, opt.pencil);
    std::vector<std::vector<BoundReport>> per_q(q_grid.size());
    auto one = [&](std::size_t i) {
        auto r = rows_for_q(t, prof, q_grid[i], opt.sphere.restarts, opt);
        const bool failed = std::any_of(r.begin(), r.end(), [](const BoundReport& b) { return !b.holds; });
        if (failed && opt.recheck_restarts > opt.sphere.restarts)
            r = rows_for_q(t, prof, q_grid[i], opt.recheck_restarts, opt);
        per_q[i] = std::move(r);
    };
    const int nq = static_cast<int>(q_grid.size());
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
        for (int i = 0; i < nq; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (int i = 0; i < nq; ++i) one(static_cast<std::size_t>(i));
    }
    std::vector<BoundReport> all;
    for (auto& v : per_q)
        for (auto& r : v) all.push_back(std::move(r));
    std::stable_sort(all.begin(), all.end(), [](const BoundReport& a, const BoundReport& b) {
        return a.q < b.q || (a.q == b.q && a.id < b.id);
    });
    return all;
}

}  // namespace qnr
