#pragma once

// Upper (and one lower) bounds on omega_q, each evaluated against an omega_q
// estimate. Because the estimate is attained by an explicit admissible pair
// it never exceeds the true radius, so `holds == true` on an upper bound is a
// sound certificate; a failing row is rechecked with more restarts first.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnr/matcore.hpp"
#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"

namespace qnr {

enum class BoundId {
    NORM,             // omega_q <= |T|
    LOWER_NORM,       // q / (2 (2 - q^2)) |T| <= omega_q
    QUAD_Q,           // omega_q^2 <= q^2 w^2 + (1 - q^2 + q s) |T|^2
    QUAD_Q_CRAWFORD,  // ... - (1 - q^2) c^2
    TRANS_Q,          // omega_q <= q w + s m
    THM_Q1,
    THM_Q2,
    THM_Q3_STATED,
    THM_Q3_PROVED,
    THM_Q4,
    THM_Q5,
    THM_Q6,
    THM_Q6_NORMAL,
    QN1,
    QN2,
};

inline constexpr double kHoldSlack = -1e-6;

std::string_view to_string(BoundId id);
std::optional<BoundId> parse_bound_id(std::string_view name);

/// Units of the comparison: omega_q itself or its square.
enum class Power { Linear, Squared };
/// Upper: rhs bounds omega from above. Lower: from below. Sandwich: rhs is
/// the upper end and component "lower" the lower end.
enum class Side { Upper, Lower, Sandwich };

struct BoundReport {
    BoundId id{};
    double q = 0.0;
    double rhs = 0.0;
    double omega_est = 0.0;
    double slack = 0.0;
    bool holds = true;
    Power power = Power::Linear;
    Side side = Side::Upper;
    std::optional<CVec> witness;
    std::string inputs_digest;
    std::vector<std::pair<std::string, double>> components;
};

/// q-independent quantities shared by every bound.
struct OperatorProfile {
    double norm = 0.0;       // |T|
    double norm_sq = 0.0;    // |T^2|
    double norm_sym = 0.0;   // |T^*T + TT^*|
    double sigma_min = 0.0;  // inf |Tx|
    double w = 0.0;
    double c = 0.0;
    double m = 0.0;
    bool normal = false;
    CVec w_witness;
};

OperatorProfile make_profile(const CMat& t, const PencilOptions& pencil = {});

struct BoundOptions {
    SphereOptions sphere{};
    PencilOptions pencil{};
    int recheck_restarts = 512;
    Exec exec = Exec::Parallel;
};

/// FNV-1a over the matrix entries and q, as 16 hex digits.
std::string inputs_digest(const CMat& t, double q);

/// NORM and LOWER_NORM.
std::vector<BoundReport> eval_norm_bounds(const CMat& t, double q, const BoundOptions& opt = {});
/// QUAD_Q, QUAD_Q_CRAWFORD and TRANS_Q.
std::vector<BoundReport> eval_intro_bounds(const CMat& t, double q, const BoundOptions& opt = {});
BoundReport eval_thm_q1(const CMat& t, double q, const BoundOptions& opt = {});
BoundReport eval_thm_q2(const CMat& t, double q, const BoundOptions& opt = {});
/// (stated, proved) for the anticommutator AB + BA.
std::pair<BoundReport, BoundReport> eval_thm_q3(const CMat& a, const CMat& b, double q, const BoundOptions& opt = {});
/// Block operator [[A, B], [C, D]] with equally sized blocks.
BoundReport eval_thm_q4(const CMat& a, const CMat& b, const CMat& c, const CMat& d, double q,
                        const BoundOptions& opt = {});
/// T split after row/column k; blocks may differ in size.
BoundReport eval_thm_q4_split(const CMat& t, std::size_t k, double q, const BoundOptions& opt = {});
BoundReport eval_thm_q5(const CMat& t, double q, const BoundOptions& opt = {});
/// General report and, for normal T, the normal-case report.
std::pair<BoundReport, std::optional<BoundReport>> eval_thm_q6(const CMat& t, double q, const BoundOptions& opt = {});
/// (QN1, QN2) at q = 1.
std::pair<BoundReport, BoundReport> eval_kittaneh(const CMat& t, const BoundOptions& opt = {});

/// Every applicable bound per q, sorted by (q, id). The anticommutator bound
/// uses (A, B) = (T, T^*) and the block bound splits T at n / 2. QN1 and QN2
/// rows are added at q = 1. Rows failing at the default restart count are
/// re-evaluated with `recheck_restarts` before being reported.
std::vector<BoundReport> bound_sweep(const CMat& t, const std::vector<double>& q_grid, const BoundOptions& opt = {});

/// Precomputed-input evaluators used by the sweep and the verify runner.
namespace rows {
BoundReport norm(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport lower_norm(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport quad_q(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport quad_q_crawford(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport trans_q(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport thm_q1(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport thm_q2(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport thm_q5(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport thm_q6(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport thm_q6_normal(const OperatorProfile& p, double q, const OmegaEstimate& om, const std::string& digest);
BoundReport qn1(const OperatorProfile& p, const std::string& digest);
BoundReport qn2(const OperatorProfile& p, const std::string& digest);
}  // namespace rows

}  // namespace qnr
