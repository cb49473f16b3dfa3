#include "qnr/random.hpp"

#include <cmath>

namespace qnr {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

CVec gaussian_vector(Rng& rng, std::size_t n) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CVec v(n);
    for (auto& z : v) {
        const double re = nd(rng);
        const double im = nd(rng);
        z = {re, im};
    }
    return v;
}

CVec random_unit(Rng& rng, std::size_t n) {
    while (true) {
        CVec v = gaussian_vector(rng, n);
        if (norm(v) > 1e-12) return normalized(std::move(v));
    }
}

CMat random_gaussian(Rng& rng, std::size_t n) {
    CVec e = gaussian_vector(rng, n * n);
    return CMat(n, std::move(e));
}

CMat random_unitary(Rng& rng, std::size_t n) {
    CMat g = random_gaussian(rng, n);
    CMat u(n);
    for (std::size_t j = 0; j < n; ++j) {
        CVec col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
        // Two Gram-Schmidt passes keep the columns orthonormal to rounding.
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                Complex d{};
                for (std::size_t i = 0; i < n; ++i) d += std::conj(u(i, k)) * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= d * u(i, k);
            }
        col = normalized(std::move(col));
        for (std::size_t i = 0; i < n; ++i) u(i, j) = col[i];
    }
    return u;
}

std::string_view to_string(Ensemble e) {
    switch (e) {
    case Ensemble::Random: return "random";
    case Ensemble::Normal: return "normal";
    case Ensemble::Nilpotent: return "nilpotent";
    case Ensemble::CSym: return "csym";
    }
    return "random";
}

std::optional<Ensemble> parse_ensemble(std::string_view name) {
    for (Ensemble e : {Ensemble::Random, Ensemble::Normal, Ensemble::Nilpotent, Ensemble::CSym})
        if (to_string(e) == name) return e;
    return std::nullopt;
}

CMat sample_ensemble(Ensemble e, std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed, 0xe75e);
    switch (e) {
    case Ensemble::Random:
        return random_gaussian(rng, n);
    case Ensemble::Normal: {
        const CMat u = random_unitary(rng, n);
        const CVec d = gaussian_vector(rng, n);
        return u * CMat::diagonal(d) * adjoint(u);
    }
    case Ensemble::Nilpotent: {
        const CMat u = random_unitary(rng, n);
        CMat g = random_gaussian(rng, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) g(i, j) = 0.0;
        return u * g * adjoint(u);
    }
    case Ensemble::CSym: {
        const CMat g = random_gaussian(rng, n);
        return 0.5 * (g + transpose(g));
    }
    }
    return CMat(n);
}

}  // namespace qnr
