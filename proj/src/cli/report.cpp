#include "qnr/cli/report.hpp"

#include "qnr/cli/io.hpp"

namespace qnr::cli {

namespace {

std::string_view power_name(Power p) { return p == Power::Squared ? "squared" : "linear"; }

std::string_view side_name(Side s) {
    switch (s) {
    case Side::Upper: return "upper";
    case Side::Lower: return "lower";
    case Side::Sandwich: return "sandwich";
    }
    return "?";
}

}  // namespace

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const CVec& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back(complex_json(z));
    return a;
}

json matrix_json(const CMat& m) {
    json e = json::array();
    for (const auto& z : m.entries()) e.push_back(complex_json(z));
    return {{"dim", m.dim()}, {"entries", std::move(e)}};
}

json to_json(const BoundReport& r) {
    json comps = json::object();
    for (const auto& [k, v] : r.components) comps[k] = v;
    json j = {{"bound_id", std::string(to_string(r.id))},
              {"q", r.q},
              {"rhs", r.rhs},
              {"omega_est", r.omega_est},
              {"slack", r.slack},
              {"holds", r.holds},
              {"power", std::string(power_name(r.power))},
              {"side", std::string(side_name(r.side))},
              {"inputs_digest", r.inputs_digest},
              {"components", std::move(comps)}};
    j["witness"] = r.witness ? vector_json(*r.witness) : json(nullptr);
    return j;
}

json to_json(const TheoremReport& r) {
    json m = json::object();
    for (const auto& [k, v] : r.metrics) m[k] = v;
    return {{"theorem", std::string(to_string(r.id))},
            {"premises_ok", r.premises_ok},
            {"conclusion_ok", r.conclusion_ok},
            {"metrics", std::move(m)},
            {"notes", r.notes}};
}

json to_json(const OmegaEstimate& e) {
    return {{"value", e.value},
            {"witness_x", vector_json(e.witness_x)},
            {"witness_phase", e.witness_phase},
            {"restarts_used", e.restarts_used},
            {"spread", e.spread}};
}

json to_json(const RadiusResult& r) {
    json j = {{"value", r.value}, {"iterations", r.iterations}, {"converged", r.converged}};
    if (const auto* v = std::get_if<CVec>(&r.witness)) j["witness"] = vector_json(*v);
    else j["witness"] = complex_json(std::get<Complex>(r.witness));
    return j;
}

std::string bounds_csv(const std::vector<BoundReport>& rows) {
    std::string out = "bound_id,q,rhs,omega_est,slack,holds,power,inputs_digest\n";
    for (const auto& r : rows) {
        out += std::string(to_string(r.id)) + "," + format_real(r.q) + "," + format_real(r.rhs) + "," +
               format_real(r.omega_est) + "," + format_real(r.slack) + "," + (r.holds ? "true" : "false") + "," +
               std::string(power_name(r.power)) + "," + r.inputs_digest + "\n";
    }
    return out;
}

std::string support_csv(const ConvexRange& r) {
    std::string out = "theta,h,point_re,point_im\n";
    for (std::size_t k = 0; k < r.grid.size(); ++k)
        out += format_real(r.grid[k]) + "," + format_real(r.support[k]) + "," +
               format_real(r.support_points[k].real()) + "," + format_real(r.support_points[k].imag()) + "\n";
    return out;
}

std::string theorem_csv(const TheoremReport& r) {
    std::string out = "metric,value\n";
    for (const auto& [k, v] : r.metrics) out += k + "," + format_real(v) + "\n";
    out += std::string("premises_ok,") + (r.premises_ok ? "1" : "0") + "\n";
    out += std::string("conclusion_ok,") + (r.conclusion_ok ? "1" : "0") + "\n";
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qnr::cli
