// qrange: command-line front end for the q-numerical range toolkit.
//
// Exit codes: 0 success, 2 parse or configuration error, 3 certified
// invariant violated (verify), 1 anything unexpected.

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnr/bounds.hpp"
#include "qnr/cli/fixtures.hpp"
#include "qnr/cli/io.hpp"
#include "qnr/cli/report.hpp"
#include "qnr/cli/svg.hpp"
#include "qnr/cli/verify.hpp"
#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"
#include "qnr/random.hpp"
#include "qnr/structure.hpp"

namespace {

using namespace qnr;
using namespace qnr::cli;

constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;

struct Common {
    std::vector<std::string> q;
    std::string q_grid;
    int n_theta = 180;
    int restarts = 64;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t b = 0;
    while (true) {
        const auto e = s.find(sep, b);
        out.push_back(s.substr(b, e == std::string::npos ? std::string::npos : e - b));
        if (e == std::string::npos) break;
        b = e + 1;
    }
    return out;
}

// "a:b:n" gives n evenly spaced points from a to b; otherwise a comma list.
std::vector<double> parse_grid(const std::string& text) {
    const auto colon = split(text, ':');
    if (colon.size() == 3) {
        const double a = parse_real(colon[0]), b = parse_real(colon[1]);
        const int n = static_cast<int>(parse_real(colon[2]));
        if (n < 1) throw Error(ErrorCode::ParseError, "grid needs at least one point");
        std::vector<double> g;
        for (int k = 0; k < n; ++k) g.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
        return g;
    }
    std::vector<double> g;
    for (const auto& tok : split(text, ',')) g.push_back(parse_real(tok));
    return g;
}

std::vector<Complex> q_values(const Common& c, std::vector<Complex> fallback) {
    std::vector<Complex> qs;
    for (const auto& s : c.q)
        for (const auto& tok : split(s, ',')) qs.push_back(parse_complex(tok));
    if (!c.q_grid.empty())
        for (double v : parse_grid(c.q_grid)) qs.emplace_back(v, 0.0);
    if (qs.empty()) qs = std::move(fallback);
    for (auto q : qs)
        if (!(std::abs(q) <= 1.0 + 1e-12)) throw Error(ErrorCode::InvalidArgument, "q values must lie in the unit disk");
    return qs;
}

std::vector<double> real_q_values(const Common& c, std::vector<double> fallback) {
    std::vector<Complex> fb(fallback.begin(), fallback.end());
    std::vector<double> out;
    for (auto q : q_values(c, fb)) {
        if (q.imag() != 0.0 || q.real() < 0.0)
            throw Error(ErrorCode::InvalidArgument, "this command needs real q in [0, 1]");
        out.push_back(std::min(q.real(), 1.0));
    }
    return out;
}

void add_common(CLI::App* app, Common& c, bool matrix_q = true) {
    if (matrix_q) {
        app->add_option("--q", c.q, "q values (real or a+bi), repeatable or comma separated");
        app->add_option("--q-grid", c.q_grid, "q grid as start:stop:count or a comma list");
    }
    app->add_option("--ntheta", c.n_theta, "support directions")->check(CLI::Range(16, 1 << 20));
    app->add_option("--restarts", c.restarts, "optimiser restarts")->check(CLI::Range(1, 1 << 20));
    app->add_option("--seed", c.seed, "random seed");
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    app->add_option("--out", c.out, "output file (default stdout)");
}

void need_format(const Common& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (c.format == f) return;
    throw Error(ErrorCode::InvalidArgument, "format '" + c.format + "' is not available for this command");
}

std::string q_label(Complex q) {
    return q.imag() == 0.0 ? "q = " + format_real(q.real()) : "q = " + format_complex(q);
}

SphereOptions sphere_of(const Common& c) {
    SphereOptions s;
    s.restarts = c.restarts;
    s.seed = c.seed;
    return s;
}

TableOptions table_of(const Common& c) {
    TableOptions t;
    t.restarts = std::max(1, c.restarts / 8);
    t.seed = c.seed;
    return t;
}

HarnessOptions harness_of(const Common& c) {
    HarnessOptions h;
    h.table = table_of(c);
    h.sphere = sphere_of(c);
    h.seed = c.seed;
    return h;
}

// ------------------------------------------------------------------ range

int cmd_range(const std::string& path, const Common& c, int samples) {
    need_format(c, {"json", "csv", "svg"});
    const CMat t = read_matrix_file(path);
    const auto qs = q_values(c, {Complex(1.0)});
    std::vector<ConvexRange> ranges;
    for (auto q : qs) ranges.push_back(range_cloud(t, q, c.n_theta, samples, c.seed, table_of(c)));
    if (c.format == "svg") {
        std::vector<SvgLayer> layers;
        for (const auto& r : ranges) layers.push_back({q_label(r.q), r.hull, r.cloud});
        write_text(c.out, render_svg(layers, "W_q(T)"));
    } else if (c.format == "csv") {
        std::string s = "q_re,q_im,theta,h,point_re,point_im\n";
        for (const auto& r : ranges)
            for (std::size_t k = 0; k < r.grid.size(); ++k)
                s += format_real(r.q.real()) + "," + format_real(r.q.imag()) + "," + format_real(r.grid[k]) + "," +
                     format_real(r.support[k]) + "," + format_real(r.support_points[k].real()) + "," +
                     format_real(r.support_points[k].imag()) + "\n";
        write_text(c.out, s);
    } else {
        json arr = json::array();
        for (const auto& r : ranges) {
            json sup = json::array(), hull = json::array();
            for (std::size_t k = 0; k < r.grid.size(); ++k)
                sup.push_back({{"theta", r.grid[k]}, {"h", r.support[k]}, {"point", complex_json(r.support_points[k])}});
            for (const auto& z : r.hull) hull.push_back(complex_json(z));
            const auto zero = contains_zero(r);
            arr.push_back({{"q", complex_json(r.q)},
                           {"support", std::move(sup)},
                           {"hull", std::move(hull)},
                           {"contains_zero", zero.contains},
                           {"zero_margin", zero.margin}});
        }
        write_text(c.out, dump({{"matrix", matrix_json(t)}, {"ranges", std::move(arr)}}));
    }
    return 0;
}

// ------------------------------------------------------------------ radius

int cmd_radius(const std::string& path, const Common& c) {
    need_format(c, {"json", "csv"});
    const CMat t = read_matrix_file(path);
    const auto qs = real_q_values(c, parse_grid("0:1:11"));
    const auto w = numerical_radius(t);
    const auto cr = crawford(t);
    const auto m = transcendental_radius(t);
    std::vector<OmegaEstimate> om;
    for (double q : qs) {
        if (t.dim() == 1 && q < 1.0 - 1e-12) om.push_back({});
        else om.push_back(omega_q(t, q, sphere_of(c)));
    }
    if (c.format == "csv") {
        std::string s = "q,omega_q\n";
        for (std::size_t i = 0; i < qs.size(); ++i) s += format_real(qs[i]) + "," + format_real(om[i].value) + "\n";
        write_text(c.out, s);
        return 0;
    }
    json rows = json::array();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        json r = to_json(om[i]);
        r["q"] = qs[i];
        rows.push_back(std::move(r));
    }
    write_text(c.out, dump({{"matrix", matrix_json(t)},
                            {"norm", spectral_norm(t)},
                            {"sigma_min", sigma_min(t)},
                            {"w", to_json(w)},
                            {"crawford", to_json(cr)},
                            {"m", to_json(m)},
                            {"omega_q", std::move(rows)}}));
    return 0;
}

// ------------------------------------------------------------------ bounds

int cmd_bounds(const std::string& path, const Common& c, int recheck) {
    need_format(c, {"json", "csv"});
    const CMat t = read_matrix_file(path);
    const auto qs = real_q_values(c, parse_grid("0:1:11"));
    BoundOptions bo;
    bo.sphere = sphere_of(c);
    bo.recheck_restarts = recheck;
    const auto rows = bound_sweep(t, qs, bo);
    if (c.format == "csv") {
        write_text(c.out, bounds_csv(rows));
        return 0;
    }
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    write_text(c.out, dump({{"matrix", matrix_json(t)}, {"rows", std::move(arr)}}));
    return 0;
}

// ------------------------------------------------------------------ verify

int cmd_verify(VerifyConfig cfg, const Common& c, const std::string& ensemble, const std::string& dims) {
    need_format(c, {"json"});
    const auto e = parse_ensemble(ensemble);
    if (!e) throw Error(ErrorCode::InvalidArgument, "unknown ensemble '" + ensemble + "'");
    cfg.ensemble = *e;
    cfg.dims.clear();
    for (const auto& tok : split(dims, ',')) cfg.dims.push_back(static_cast<int>(parse_real(tok)));
    if (!c.q.empty() || !c.q_grid.empty()) cfg.q_grid = real_q_values(c, {});
    cfg.seed = c.seed;
    cfg.restarts = c.restarts;
    cfg.n_theta = c.n_theta;
    const auto res = run_verify(cfg);
    write_text(c.out, dump(res.report));
    return res.certified_ok ? 0 : kExitViolation;
}

// ------------------------------------------------------------------ structure harnesses

std::string theorem_output(const TheoremReport& r, const Common& c, json extra = json::object()) {
    if (c.format == "csv") return theorem_csv(r);
    json j = to_json(r);
    for (auto& [k, v] : extra.items()) j[k] = v;
    return dump(j);
}

int cmd_converge(const Common& c, const std::string& eigs, const std::string& dims_text) {
    need_format(c, {"json", "csv", "svg"});
    std::vector<int> dims;
    for (const auto& tok : split(dims_text, ',')) dims.push_back(static_cast<int>(parse_real(tok)));
    if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "no dimensions given");
    std::vector<Complex> spectrum;
    if (eigs.empty() || eigs == "harmonic") {
        for (int k = 1; k <= *std::max_element(dims.begin(), dims.end()); ++k) spectrum.emplace_back(1.0 / k, 0.0);
    } else {
        for (const auto& tok : split(eigs, ',')) spectrum.push_back(parse_complex(tok));
    }
    const auto qs = q_values(c, {Complex(0.5)});
    const Complex q = qs.front();
    if (c.format == "svg") {
        const std::size_t ambient = static_cast<std::size_t>(*std::max_element(dims.begin(), dims.end())) + 1;
        std::vector<SvgLayer> layers;
        for (int n : dims) {
            CMat tn(ambient);
            for (int k = 0; k < n && k < static_cast<int>(spectrum.size()); ++k) tn(k, k) = spectrum[static_cast<std::size_t>(k)];
            const auto r = range_cloud(tn, q, c.n_theta, 0, c.seed, table_of(c));
            layers.push_back({"n = " + std::to_string(n), r.hull, {}});
        }
        write_text(c.out, render_svg(layers, "W_q(T_n), " + q_label(q)));
        return 0;
    }
    const auto r = run_convergence(spectrum, q, dims, c.n_theta, harness_of(c));
    write_text(c.out, theorem_output(r, c));
    return 0;
}

int cmd_perturb(const std::string& path, const Common& c, const std::string& eps_text, int trials) {
    need_format(c, {"json", "csv"});
    const CMat t = read_matrix_file(path);
    std::vector<double> eps;
    for (const auto& tok : split(eps_text, ',')) eps.push_back(parse_real(tok));
    std::vector<std::uint64_t> seeds;
    for (int k = 0; k < trials; ++k) seeds.push_back(c.seed + static_cast<std::uint64_t>(k));
    const auto qs = q_values(c, {Complex(0.5)});
    if (c.format == "csv") {
        std::string s;
        for (auto q : qs) s += "# " + q_label(q) + "\n" + theorem_csv(run_perturbation(t, q, seeds, eps, c.n_theta, harness_of(c)));
        write_text(c.out, s);
        return 0;
    }
    json arr = json::array();
    for (auto q : qs) {
        json j = to_json(run_perturbation(t, q, seeds, eps, c.n_theta, harness_of(c)));
        j["q"] = complex_json(q);
        arr.push_back(std::move(j));
    }
    write_text(c.out, dump({{"matrix", matrix_json(t)}, {"eps", eps}, {"trials", trials}, {"reports", std::move(arr)}}));
    return 0;
}

int cmd_transform(const std::string& path, const Common& c) {
    need_format(c, {"json", "csv", "svg"});
    const CMat t = read_matrix_file(path);
    const CMat a = aluthge(t);
    const bool normal = is_normal(t);
    if (normal) std::cerr << "input is normal: its Aluthge transform equals the input\n";
    const auto qs = q_values(c, {Complex(0.5)});
    if (c.format == "svg") {
        std::vector<SvgLayer> layers;
        const Complex q = qs.front();
        const std::pair<const char*, CMat> ops[] = {{"Aluthge", a}, {"T", t}, {"T*", adjoint(t)}};
        for (const auto& [name, m] : ops) {
            const auto r = range_cloud(m, q, c.n_theta, 0, c.seed, table_of(c));
            layers.push_back({std::string(name), r.hull, {}});
        }
        write_text(c.out, render_svg(layers, "Aluthge inclusion, " + q_label(q)));
        return 0;
    }
    if (c.format == "csv") {
        std::string s;
        for (auto q : qs) s += "# " + q_label(q) + "\n" + theorem_csv(check_thm5(t, q, c.n_theta, harness_of(c)));
        write_text(c.out, s);
        return 0;
    }
    json arr = json::array();
    for (auto q : qs) {
        json j = to_json(check_thm5(t, q, c.n_theta, harness_of(c)));
        j["q"] = complex_json(q);
        arr.push_back(std::move(j));
    }
    write_text(c.out, dump({{"matrix", matrix_json(t)},
                            {"aluthge", matrix_json(a)},
                            {"normal_input", normal},
                            {"reports", std::move(arr)}}));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-numerical range toolkit"};
    app.require_subcommand(0, 1);
    bool fixtures = false;
    std::string fixtures_out;
    app.add_flag("--paper-fixtures", fixtures, "run the published-example regression set");
    app.add_option("--fixtures-out", fixtures_out, "output file for the regression set (default stdout)");

    Common c_range, c_radius, c_bounds, c_verify, c_converge, c_perturb, c_transform;
    std::string m_range, m_radius, m_bounds, m_perturb, m_transform;

    auto* range = app.add_subcommand("range", "support function, boundary and optional SVG of W_q(T)");
    range->add_option("matrix", m_range, "matrix file (.json or .csv)")->required();
    add_common(range, c_range);
    int samples = 256;
    range->add_option("--samples", samples, "random admissible pairs in the cloud")->check(CLI::NonNegativeNumber);

    auto* radius = app.add_subcommand("radius", "omega_q per q together with w, c, m, sigma_min and |T|");
    radius->add_option("matrix", m_radius, "matrix file")->required();
    add_common(radius, c_radius);

    auto* bounds = app.add_subcommand("bounds", "bound catalog per q");
    bounds->add_option("matrix", m_bounds, "matrix file")->required();
    add_common(bounds, c_bounds);
    int recheck = 512;
    bounds->add_option("--recheck-restarts", recheck, "restarts for rechecking failing rows")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "property suite over a random ensemble");
    add_common(verify, c_verify);
    c_verify.n_theta = 64;
    VerifyConfig vcfg;
    std::string ensemble = "random", vdims = "2,3,4,5,6";
    verify->add_option("--ensemble", ensemble, "random, normal, nilpotent or csym");
    verify->add_option("--dims", vdims, "comma-separated dimensions, cycled");
    verify->add_option("--count", vcfg.count, "number of matrices")->check(CLI::PositiveNumber);
    verify->add_option("--recheck-restarts", vcfg.recheck_restarts, "restarts for rechecking failing rows");
    verify->add_option("--tol-anchor", vcfg.tol_anchor, "relative tolerance of omega_1 = w and omega_0 = m");
    verify->add_option("--tol-inclusion", vcfg.tol_inclusion, "slack tolerance of spectral inclusion");
    verify->add_option("--tol-aluthge", vcfg.tol_aluthge, "characteristic polynomial tolerance");
    verify->add_option("--max-witnesses", vcfg.max_witnesses, "stored violations per invariant");

    auto* converge = app.add_subcommand("converge", "Hausdorff convergence of diagonal truncations");
    add_common(converge, c_converge);
    std::string eigs = "harmonic", cdims = "2,4,8,16,24";
    converge->add_option("--eigs", eigs, "comma-separated eigenvalues, or 'harmonic' for 1/k");
    converge->add_option("--dims", cdims, "ascending truncation sizes");

    auto* perturb = app.add_subcommand("perturb", "stability of W_q under random perturbations");
    perturb->add_option("matrix", m_perturb, "matrix file")->required();
    add_common(perturb, c_perturb);
    std::string eps = "1e-3,1e-2,1e-1";
    int trials = 5;
    perturb->add_option("--eps", eps, "comma-separated perturbation norms");
    perturb->add_option("--trials", trials, "random perturbations per eps")->check(CLI::PositiveNumber);

    auto* transform = app.add_subcommand("transform", "Aluthge transform and the inclusion check");
    transform->add_option("matrix", m_transform, "matrix file")->required();
    add_common(transform, c_transform);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (fixtures) {
            write_text(fixtures_out, dump(fixtures_json(run_fixtures())));
            if (app.get_subcommands().empty()) return 0;
        }
        if (range->parsed()) return cmd_range(m_range, c_range, samples);
        if (radius->parsed()) return cmd_radius(m_radius, c_radius);
        if (bounds->parsed()) return cmd_bounds(m_bounds, c_bounds, recheck);
        if (verify->parsed()) return cmd_verify(vcfg, c_verify, ensemble, vdims);
        if (converge->parsed()) return cmd_converge(c_converge, eigs, cdims);
        if (perturb->parsed()) return cmd_perturb(m_perturb, c_perturb, eps, trials);
        if (transform->parsed()) return cmd_transform(m_transform, c_transform);
        if (!fixtures) {
            std::cout << app.help();
            return kExitConfig;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
