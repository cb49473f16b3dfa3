#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qnr/qrange.hpp"
#include "qnr/radii.hpp"
#include "qnr/random.hpp"
#include "qnr/structure.hpp"

using namespace qnr;

namespace {

const Complex I{0.0, 1.0};

CMat rnd(std::size_t n, std::uint64_t seed) { return sample_ensemble(Ensemble::Random, n, seed); }

CMat upper(Complex l1, Complex l2, Complex c) { return CMat{{l1, c}, {0.0, l2}}; }

}  // namespace

TEST_CASE("q validation and admissible pairs") {
    CHECK_THROWS_AS(check_q(Complex(1.1, 0.0)), Error);
    CHECK_NOTHROW(check_q(Complex(0.6, 0.8)));
    for (Complex q : {Complex(0.0), Complex(0.5), Complex(0.3, -0.4), Complex(1.0)}) {
        const auto p = sample_pair(q, 12, 4);
        CHECK(norm(p.x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(norm(p.y) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(inner(p.x, p.y) - q) <= 1e-14);
    }
    CHECK_THROWS_AS(sample_pair(0.5, 1, 1), Error);
    CHECK_NOTHROW(sample_pair(1.0, 1, 1));
}

TEST_CASE("pair for a witness realises the support point") {
    const CMat t = rnd(3, 5);
    const CVec x = normalized(CVec{1.0, I, -0.5});
    const Complex q(0.4, 0.2);
    for (double th : {0.0, 1.0, 3.0}) {
        const auto p = pair_for_witness(t, x, q, th);
        CHECK(std::abs(inner(p.x, p.y) - q) <= 1e-13);
        CHECK(norm(p.y) == doctest::Approx(1.0).epsilon(1e-13));
        const double h = (std::polar(1.0, -th) * pair_value(t, p)).real();
        CHECK(h == doctest::Approx(support_objective(t, q, th, x)).epsilon(1e-12));
    }
}

TEST_CASE("omega_q of diag(2,1) is 3q/2 + 1/2") {
    const CMat t = CMat::diagonal({2.0, 1.0});
    for (double q = 0.0; q <= 1.0 + 1e-12; q += 0.125) {
        const auto e = omega_q(t, std::min(q, 1.0));
        CHECK(e.value == doctest::Approx(1.5 * q + 0.5).epsilon(1e-9));
        CHECK(omega_objective(t, std::min(q, 1.0), e.witness_x) == doctest::Approx(e.value).epsilon(1e-12));
    }
}

TEST_CASE("omega_q anchors: q = 1 gives w and q = 0 gives m") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const CMat t = rnd(2 + s % 5, 4000 + s);
        const double w = numerical_radius(t).value;
        const double m = transcendental_radius(t).value;
        CHECK(omega_q(t, 1.0).value == doctest::Approx(w).epsilon(1e-5));
        CHECK(omega_q(t, 0.0).value == doctest::Approx(m).epsilon(1e-5));
    }
}

TEST_CASE("omega_q dominates sampled admissible pairs and respects the norm sandwich") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const CMat t = rnd(2 + s % 4, 5000 + s);
        const double n = spectral_norm(t);
        for (double q : {0.1, 0.4, 0.7, 1.0}) {
            const double om = omega_q(t, q).value;
            CHECK(oracle::sampled_radius(t, q, 2000, static_cast<unsigned>(s)) <= om + 1e-9);
            CHECK(om <= n + 1e-9);
            CHECK(q / (2.0 * (2.0 - q * q)) * n - 1e-6 <= om);
        }
    }
}

TEST_CASE("2x2 closed form against the optimiser") {
    CHECK(omega_q_2x2_closed(CMat::diagonal({2.0, 1.0}), 0.5).value() == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(omega_q_2x2_closed(CMat{{0.0, 1.0}, {0.0, 0.0}}, 1.0).value() == doctest::Approx(0.5).epsilon(1e-12));
    int compared = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const Complex l1 = Complex(1.0 + 0.1 * s, 0.0), l2 = Complex(0.3 * s - 2.0, 0.0);
        const CMat t = upper(l1, l2, Complex(0.5, 0.25 * s));
        for (double q : {0.0, 0.3, 0.8}) {
            const auto c = omega_q_2x2_closed(t, q);
            if (!c) continue;
            ++compared;
            CHECK(omega_q(t, q).value == doctest::Approx(*c).epsilon(1e-8));
        }
    }
    CHECK(compared > 20);
    CHECK_FALSE(omega_q_2x2_closed(CMat::diagonal({1.0, I}), 0.5).has_value());
}

TEST_CASE("support tables match the elliptical range of 2x2 matrices") {
    const auto grid = theta_grid(48);
    for (std::uint64_t s = 0; s < 6; ++s) {
        Rng rng = make_rng(6000 + s);
        const CVec g = gaussian_vector(rng, 3);
        const CMat t = upper(g[0], g[1], g[2]);
        for (Complex q : {Complex(0.0), Complex(0.5), Complex(0.3, 0.6), Complex(1.0)}) {
            const auto e = oracle::triangular_range(g[0], g[1], g[2], q);
            const auto tab = support_table(t, q, grid);
            for (std::size_t k = 0; k < grid.size(); ++k)
                CHECK(tab[k].value == doctest::Approx(oracle::ellipse_support(e.f1, e.f2, e.b, grid[k])).epsilon(1e-7));
        }
    }
}

TEST_CASE("support values are attained by the reported points") {
    const CMat t = rnd(3, 8);
    const auto grid = theta_grid(32);
    const auto tab = support_table(t, 0.6, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK((std::polar(1.0, -grid[k]) * tab[k].point).real() == doctest::Approx(tab[k].value).epsilon(1e-12));
        CHECK(support_objective(t, 0.6, grid[k], tab[k].x) <= tab[k].value + 1e-12);
    }
}

TEST_CASE("serial and parallel runs are identical") {
    const CMat t = rnd(4, 77);
    SphereOptions ss, sp;
    ss.exec = Exec::Serial;
    sp.exec = Exec::Parallel;
    const auto a = omega_q(t, 0.6, ss), b = omega_q(t, 0.6, sp);
    CHECK(a.value == b.value);
    CHECK(a.witness_x == b.witness_x);
    TableOptions ts, tp;
    ts.exec = Exec::Serial;
    tp.exec = Exec::Parallel;
    const auto grid = theta_grid(40);
    const auto ta = support_table(t, Complex(0.2, 0.5), grid, ts);
    const auto tb = support_table(t, Complex(0.2, 0.5), grid, tp);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(ta[k].value == tb[k].value);
}

TEST_CASE("more restarts never lower the estimate") {
    for (std::uint64_t s = 0; s < 8; ++s) {
        const CMat t = rnd(3 + s % 3, 880 + s);
        double prev = 0.0;
        for (int r : {1, 2, 4, 16, 64}) {
            SphereOptions o;
            o.restarts = r;
            const double v = omega_q(t, 0.35, o).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("one-dimensional operators") {
    const CMat t{{Complex(2.0, 1.0)}};
    CHECK_THROWS_AS(omega_q(t, 0.5), Error);
    CHECK(omega_q(t, 1.0).value == doctest::Approx(std::abs(Complex(2.0, 1.0))));
}

TEST_CASE("range cloud: samples lie inside the support envelope") {
    const CMat t = rnd(3, 31);
    const auto r = range_cloud(t, Complex(0.5, 0.1), 64, 400, 9);
    REQUIRE(r.cloud.size() == 400);
    for (const auto& z : r.cloud)
        for (std::size_t k = 0; k < r.grid.size(); ++k)
            CHECK((std::polar(1.0, -r.grid[k]) * z).real() <= r.support[k] + 1e-9);
    CHECK(r.hull.size() >= 3);
    CHECK_THROWS_AS(range_cloud(t, 0.5, 8, 0, 1), Error);
}

TEST_CASE("range examples") {
    SUBCASE("identity at q = 1/2 is the single point 1/2") {
        const auto r = range_cloud(CMat::identity(2), 0.5, 32, 50, 1);
        for (std::size_t k = 0; k < r.grid.size(); ++k)
            CHECK(std::abs(r.support_points[k] - Complex(0.5)) <= 1e-9);
    }
    SUBCASE("diag(1, 1/2, 1/3) at q = 1/2 encloses the origin") {
        const auto r = range_cloud(CMat::diagonal({1.0, 0.5, 1.0 / 3.0}), 0.5, 64, 0, 1);
        const auto z = contains_zero(r);
        CHECK(z.contains);
        CHECK(z.margin > 0.0);
    }
    SUBCASE("diag(2,1) at q = 1 is a real segment") {
        const auto r = range_cloud(CMat::diagonal({2.0, 1.0}), 1.0, 64, 50, 1);
        for (const auto& p : r.hull) CHECK(std::abs(p.imag()) <= 1e-9);
        CHECK_FALSE(contains_zero(r).contains);
    }
}

TEST_CASE("affine range identity") {
    const CMat t = rnd(3, 41);
    const int n = 36;
    const auto grid = theta_grid(n);
    const Complex a = std::polar(1.7, grid[5]);  // rotation aligned with the grid
    const Complex b(0.4, -1.1);
    const double q = 0.6;
    const CMat s = a * t + b * CMat::identity(3);
    const auto ht = support_table(t, q, grid);
    const auto hs = support_table(s, q, grid);
    for (int k = 0; k < n; ++k) {
        const double expect = std::abs(a) * ht[static_cast<std::size_t>((k - 5 + n) % n)].value +
                              (std::polar(1.0, -grid[static_cast<std::size_t>(k)]) * b * q).real();
        CHECK(hs[static_cast<std::size_t>(k)].value == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("spectral inclusion for normal operators") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CMat t = sample_ensemble(Ensemble::Normal, 3 + s % 3, 300 + s);
        const auto ev = eigenvalues(t);
        const auto grid = theta_grid(48);
        for (double q : {0.2, 0.7, 1.0}) {
            const auto tab = support_table(t, q, grid);
            for (const auto& l : ev)
                for (std::size_t k = 0; k < grid.size(); ++k)
                    CHECK((std::polar(1.0, -grid[k]) * q * l).real() <= tab[k].value + 1e-6);
        }
    }
}

TEST_CASE("convex hull and Hausdorff distance") {
    const auto h = convex_hull({0.0, 1.0, Complex(1, 1), I, Complex(0.5, 0.5)});
    CHECK(h.size() == 4);
    double area = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        const auto& p = h[k];
        const auto& q = h[(k + 1) % h.size()];
        area += p.real() * q.imag() - q.real() * p.imag();
    }
    CHECK(area == doctest::Approx(2.0));  // counter-clockwise, twice the area
    const std::vector<double> ha{1.0, 2.0, 3.0}, hb{1.5, 2.0, 2.0};
    CHECK(hausdorff(ha, hb) == doctest::Approx(1.0));
    const auto r1 = range_cloud(CMat::identity(2), 0.5, 16, 0, 1);
    const auto r2 = range_cloud(CMat::identity(2), 0.5, 32, 0, 1);
    CHECK_THROWS_AS(hausdorff(r1, r2), Error);
    CHECK(hausdorff(r1, r1) == 0.0);
}

TEST_CASE("W_0 is a disk centred at the origin") {
    const CMat t = rnd(3, 61);
    const auto grid = theta_grid(24);
    const auto tab = support_table(t, 0.0, grid);
    for (const auto& r : tab) CHECK(r.value == doctest::Approx(tab[0].value).epsilon(1e-7));
    CHECK(tab[0].value == doctest::Approx(transcendental_radius(t).value).epsilon(1e-6));
}
