#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qnr/qrange.hpp"
#include "qnr/random.hpp"
#include "qnr/structure.hpp"

using namespace qnr;

namespace {

const Complex I{0.0, 1.0};

CMat rnd(std::size_t n, std::uint64_t seed) { return sample_ensemble(Ensemble::Random, n, seed); }

HarnessOptions quick() {
    HarnessOptions h;
    h.table.restarts = 4;
    h.samples = 64;
    return h;
}

}  // namespace

TEST_CASE("normal and hyponormal predicates") {
    CHECK(is_normal(CMat::diagonal({1.0, I})));
    CHECK_FALSE(is_normal(CMat{{0.0, 1.0}, {0.0, 0.0}}));
    // The unilateral shift truncation is not hyponormal; its adjoint is not either.
    CHECK_FALSE(is_hyponormal(CMat{{0.0, 0.0}, {1.0, 0.0}}));
    CHECK(is_hyponormal(CMat::diagonal({2.0, -1.0})));
    const bool both = is_hyponormal(rnd(3, 1)) && is_hyponormal(adjoint(rnd(3, 1)));
    CHECK_FALSE(both);
}

TEST_CASE("conjugations are antilinear involutive isometries") {
    Rng rng = make_rng(8);
    const CMat v = random_unitary(rng, 4);
    const auto specs = {ConjugationSpec::swap(4), ConjugationSpec::standard(4),
                        ConjugationSpec::from_matrix(v * transpose(v))};
    for (const auto& c : specs) {
        const CVec x = random_unit(rng, 4);
        const CVec cx = conjugation_apply(c, x);
        CHECK(norm(cx) == doctest::Approx(1.0).epsilon(1e-12));
        const CVec ccx = conjugation_apply(c, cx);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ccx[i] - x[i]) <= 1e-12);
        const CVec ix = conjugation_apply(c, CVec{I * x[0], I * x[1], I * x[2], I * x[3]});
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ix[i] + I * cx[i]) <= 1e-12);
    }
    CHECK_THROWS_AS(ConjugationSpec::from_matrix(CMat{{0.0, 1.0}, {-1.0, 0.0}}), Error);
    CHECK_THROWS_AS(ConjugationSpec::from_matrix(2.0 * CMat::identity(2)), Error);
}

TEST_CASE("complex symmetry") {
    const CMat t{{1.0, I}, {I, -1.0}};
    CHECK(is_complex_symmetric(t, ConjugationSpec::standard(2)));
    // Under the coordinate swap C T* C = [[-1, i], [i, 1]].
    const CMat swapped = conjugate_operator(ConjugationSpec::swap(2), adjoint(t));
    CHECK(swapped == CMat{{-1.0, I}, {I, 1.0}});
    CHECK_FALSE(is_complex_symmetric(t, ConjugationSpec::swap(2)));
    CHECK(complex_symmetry_defect(t, ConjugationSpec::swap(2)) == doctest::Approx(2.0));
    // A Toeplitz matrix is symmetric under the swap.
    const CMat toe{{1.0, 2.0, I}, {3.0, 1.0, 2.0}, {5.0, 3.0, 1.0}};
    CHECK(is_complex_symmetric(toe, ConjugationSpec::swap(3)));
    for (std::uint64_t s = 0; s < 5; ++s)
        CHECK(is_complex_symmetric(sample_ensemble(Ensemble::CSym, 4, s), ConjugationSpec::standard(4)));
}

TEST_CASE("Aluthge transform preserves the spectrum and contracts the norm") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        const std::size_t n = 2 + s % 4;
        const CMat t = s % 3 == 2 ? sample_ensemble(Ensemble::Nilpotent, n, s) : rnd(n, 60 + s);
        const CMat a = aluthge(t);
        CHECK(spectral_norm(a) <= spectral_norm(t) + 1e-9);
        const double scale = std::max(1.0, spectral_norm(t));
        for (Complex z : {Complex(0.3, 0.1), Complex(-1.0, 2.0), Complex(2.5, -0.5)})
            CHECK(std::abs(oracle::char_value(a, z) - oracle::char_value(t, z)) <=
                  1e-9 * std::pow(scale + std::abs(z), static_cast<double>(n)));
        if (s % 3 != 2) CHECK(oracle::multiset_gap(eigenvalues(a), eigenvalues(t)) <= 1e-7);
    }
}

TEST_CASE("Aluthge transform of a normal operator is itself") {
    const CMat t = sample_ensemble(Ensemble::Normal, 4, 3);
    CHECK(max_abs(aluthge(t) - t) <= 1e-10);
}

TEST_CASE("unitary extension of the polar isometry") {
    const CMat t{{0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}};
    const auto p = polar(t);
    const CMat u = unitary_extension(p);
    CHECK(max_abs(adjoint(u) * u - CMat::identity(3)) <= 1e-12);
    CHECK(max_abs(u * p.modulus - t) <= 1e-12);
    CHECK(max_abs(aluthge_with(t, u) - aluthge(t)) <= 1e-12);
}

TEST_CASE("interior of W_q for normal operators") {
    const auto r = check_thm1(CMat::diagonal({1.0, -1.0, I}), 0.5, 64, quick());
    CHECK(r.premises_ok);
    CHECK(r.conclusion_ok);
    CHECK(r.metric("margin") > 0.1);
    const auto off = check_thm1(CMat::diagonal({2.0, 1.0}), 1.0, 64, quick());
    CHECK_FALSE(off.premises_ok);
    const auto nn = check_thm1(CMat{{0.0, 1.0}, {0.0, 0.0}}, 0.5, 64, quick());
    CHECK_FALSE(nn.premises_ok);
}

TEST_CASE("positive spectrum keeps W_1 off the origin") {
    const CMat t = CMat::diagonal({0.5, 1.0, 3.0});
    const auto r = range_cloud(t, 1.0, 64, 0, 1);
    CHECK_FALSE(contains_zero(r).contains);
}

TEST_CASE("inclusion for complex symmetric operators") {
    const CMat t{{1.0, I}, {I, -1.0}};
    CHECK_THROWS_AS(check_thm2(t, ConjugationSpec::swap(2), 0.5, 32, quick()), Error);
    const auto r = check_thm2(t, ConjugationSpec::standard(2), 0.5, 36, quick());
    CHECK(r.premises_ok);
    CHECK(r.conclusion_ok);
    CHECK(r.metric("slice0_violation") <= r.metric("inclusion_violation") + 1e-15);
    const auto z = check_thm2(t, ConjugationSpec::standard(2), 0.0, 36, quick());
    CHECK(z.metric("circularity_defect") <= 1e-5);
    // The inclusion collapses to W_q(T) within conj(W_q(T)); diag(i, 0) is symmetric,
    // W_1 = [0, i], and the support gap at theta = pi/2 is exactly 1.
    const auto d = check_thm2(CMat::diagonal({I, 0.0}), ConjugationSpec::standard(2), 1.0, 36, quick());
    CHECK(d.premises_ok);
    CHECK_FALSE(d.conclusion_ok);
    CHECK(d.metric("inclusion_violation") == doctest::Approx(1.0).epsilon(1e-8));
    const CMat cs = sample_ensemble(Ensemble::CSym, 3, 5);
    CHECK(check_thm2(cs, ConjugationSpec::standard(3), Complex(0.3, 0.3), 24, quick()).metric("inclusion_violation") > 1e-3);
}

TEST_CASE("hyponormal operators similar to their adjoint") {
    const CMat t = CMat::diagonal({2.0, 1.0});
    const auto half = check_thm3(t, CMat::identity(2), 0.5, 90, quick());
    CHECK(half.premises_ok);
    // W_{1/2}(diag(2,1)) is an elliptical disk, so the real-interval
    // conclusion fails even though every premise holds.
    CHECK(half.metric("max_imag") == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-8));
    CHECK_FALSE(half.conclusion_ok);
    const auto one = check_thm3(t, CMat::identity(2), 1.0, 90, quick());
    CHECK(one.premises_ok);
    CHECK(one.conclusion_ok);
    const auto bad = check_thm3(CMat{{0.0, 1.0}, {0.0, 0.0}}, CMat::identity(2), 1.0, 90, quick());
    CHECK_FALSE(bad.premises_ok);
    CHECK_THROWS_AS(check_thm3(t, CMat{{1.0, 1.0}, {1.0, 1.0}}, 0.5, 90, quick()), Error);
}

TEST_CASE("convergence of diagonal truncations") {
    std::vector<Complex> eig;
    for (int k = 1; k <= 12; ++k) eig.emplace_back(1.0 / k, 0.0);
    const auto r = run_convergence(eig, 0.5, {2, 4, 8, 12}, 90, quick());
    CHECK(r.conclusion_ok);
    CHECK(r.metric("monotone") == 1.0);
    CHECK(r.metric("dH_12") == 0.0);
    for (int n : {2, 4, 8}) {
        CHECK(r.metric("witness_" + std::to_string(n)) == doctest::Approx(-0.25 + 0.75 / n).epsilon(1e-14));
        CHECK(r.metric("lipschitz_" + std::to_string(n)) <= 1e-6);
    }
    CHECK(r.metric("dH_2") >= r.metric("dH_4"));
    CHECK_THROWS_AS(run_convergence(eig, 0.5, {4, 2}, 90), Error);
    CHECK_THROWS_AS(run_convergence(eig, 0.5, {2, 40}, 90), Error);
}

TEST_CASE("Aluthge inclusion harness") {
    for (double q : {0.3, 0.7}) {
        const auto r = check_thm5(CMat{{2.0, 1.0}, {0.0, 1.0}}, q, 72, quick());
        CHECK(r.conclusion_ok);
        CHECK(r.metric("inclusion_violation") <= 1e-5);
        CHECK(r.metric("radius_excess") <= 1e-6);
    }
}

TEST_CASE("perturbation harness") {
    const CMat t = CMat::diagonal({2.0, 1.0});
    const auto r = run_perturbation(t, 0.5, {1, 2}, {1e-3, 1e-1}, 72, quick());
    CHECK(r.metric("trials") == 4.0);
    CHECK(r.conclusion_ok);
    CHECK(r.metric("max_ratio") <= 4.0 + 1e-6);
    CHECK_THROWS_AS(run_perturbation(t, 0.0, {1}, {1e-2}, 72), Error);
}
