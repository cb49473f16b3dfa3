#pragma once

// Property-suite runner. Matrix i of a run is sample_ensemble(ensemble,
// dims[i % dims.size()], matrix_seed(seed, i)), so any violation can be
// replayed from the seed stored next to it.
//
// Certified invariants are sound checks of established results; a failure
// makes the run exit with code 3. New-theorem bounds are tallied as
// findings only.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnr/exec.hpp"
#include "qnr/random.hpp"

namespace qnr::cli {

struct VerifyConfig {
    Ensemble ensemble = Ensemble::Random;
    std::vector<int> dims{2, 3, 4, 5, 6};
    int count = 100;
    std::vector<double> q_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::uint64_t seed = 1;
    int restarts = 64;
    int recheck_restarts = 512;
    int n_theta = 64;            // spectral-inclusion tables
    double tol_anchor = 1e-5;    // relative, omega_1 = w and omega_0 = m
    double tol_inclusion = 1e-6;
    double tol_aluthge = 1e-7;   // characteristic polynomial coefficients, relative
    int max_witnesses = 25;      // stored violations per invariant
    Exec exec = Exec::Parallel;
};

std::uint64_t matrix_seed(std::uint64_t seed, std::size_t index);

struct VerifyResult {
    nlohmann::json report;
    bool certified_ok = true;
};

VerifyResult run_verify(const VerifyConfig& cfg);

}  // namespace qnr::cli
