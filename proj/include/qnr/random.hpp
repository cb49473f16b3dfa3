#pragma once

// Seeded random primitives. Every stream is derived from (seed, stream id)
// through splitmix64, so work item i never depends on how many items ran
// before it.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "qnr/matcore.hpp"

namespace qnr {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Standard complex Gaussian vector (E|z_i|^2 = 1).
CVec gaussian_vector(Rng& rng, std::size_t n);
/// Uniform point on the complex unit sphere.
CVec random_unit(Rng& rng, std::size_t n);
CMat random_gaussian(Rng& rng, std::size_t n);
/// Haar-ish unitary from Gram-Schmidt on a Gaussian matrix.
CMat random_unitary(Rng& rng, std::size_t n);

enum class Ensemble { Random, Normal, Nilpotent, CSym };

std::string_view to_string(Ensemble e);
std::optional<Ensemble> parse_ensemble(std::string_view name);

/// One member of an ensemble, fully determined by (e, n, seed).
///   Random    - complex Gaussian entries
///   Normal    - U diag(d) U^* with Gaussian d
///   Nilpotent - U N U^* with N strictly upper triangular
///   CSym      - T = T^T (complex symmetric under the standard conjugation)
CMat sample_ensemble(Ensemble e, std::size_t n, std::uint64_t seed);

}  // namespace qnr
