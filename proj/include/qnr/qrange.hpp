#pragma once

// q-numerical range W_q(T) = { <Tx, y> : |x| = |y| = 1, <x, y> = q }.
//
// Writing y = conj(q) x + s z with s = sqrt(1 - |q|^2) and z a unit vector
// orthogonal to x, the z-maximisation is closed form:
//
//   max_z Re(e^{-i t} <Tx, y>) = Re(e^{-i t} q a) + s |Tx - a x|,  a = <Tx, x>
//
// so every radius and support value is an optimisation over x alone. Values
// returned here are attained by explicit admissible pairs, hence they are
// lower estimates of the true suprema.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qnr/exec.hpp"
#include "qnr/matcore.hpp"

namespace qnr {

/// Throws InvalidArgument unless |q| <= 1 + 1e-12.
void check_q(Complex q);

struct AdmissiblePair {
    CVec x;
    CVec y;
    Complex q;
};

/// x uniform on the sphere, y = conj(q) x + s z with z uniform on x^perp.
AdmissiblePair sample_pair(Complex q, std::uint64_t seed, std::size_t dim);

/// <Tx, y> for a pair.
Complex pair_value(const CMat& t, const AdmissiblePair& p);

/// Pair whose value is the support point q a + s r e^{i theta} for x.
AdmissiblePair pair_for_witness(const CMat& t, const CVec& x, Complex q, double theta);

struct SphereOptions {
    int restarts = 64;
    std::uint64_t seed = 0x5eed;
    Exec exec = Exec::Parallel;
    int max_iter = 500;
};

struct OmegaEstimate {
    double value = 0.0;
    CVec witness_x;
    double witness_phase = 0.0;  // arg of the attained point of W_q
    int restarts_used = 0;
    double spread = 0.0;  // max - min over converged restarts
};

/// omega_q(T) = sup |W_q(T)| for real q in [0, 1].
/// Dim 1 with q < 1 throws InfeasibleQ.
OmegaEstimate omega_q(const CMat& t, double q, const SphereOptions& opt = {});

/// Objective of omega_q at a given x: q |a| + s sqrt(|Tx|^2 - |a|^2).
double omega_objective(const CMat& t, double q, std::span<const Complex> x);

/// Closed form for 2x2 matrices. With Schur form [[l1, c], [0, l2]] the set
/// W_q(T) is an elliptical disk with foci q l1, q l2 and minor semi-axis
/// (s sqrt(d^2 + |c|^2) + |c|) / 2, d = |l1 - l2|. The farthest point from
/// the origin is explicit when the centre lies on the focal axis (or is 0,
/// or the foci coincide); otherwise the result is nullopt.
std::optional<double> omega_q_2x2_closed(const CMat& t, double q);

/// Support objective at x: Re(e^{-i theta} q a) + s |Tx - a x|. Any x gives
/// a lower bound on h(theta).
double support_objective(const CMat& t, Complex q, double theta, std::span<const Complex> x);

/// Support value h(theta) = max Re(e^{-i theta} w) over w in W_q(T).
double support_function(const CMat& t, Complex q, double theta, const SphereOptions& opt = {});

struct SupportSample {
    double value = 0.0;
    Complex point;  // a point of W_q(T) attaining value
    CVec x;         // optimiser witness (may lag `point` after cloud absorption)
};

struct TableOptions {
    int restarts = 8;  // independent starts per direction
    std::uint64_t seed = 0x7ab1e;
    Exec exec = Exec::Parallel;
    int max_iter = 500;
    /// Optional per-direction warm starts (same length as the grid), e.g.
    /// witnesses of a nearby operator.
    const std::vector<CVec>* warm = nullptr;
};

/// Support values on an arbitrary angle list. After the independent solves
/// the table is refined by neighbour warm-start sweeps and a consistency
/// pass (every found point bounds every direction from below).
std::vector<SupportSample> support_table(const CMat& t, Complex q, std::span<const double> thetas,
                                         const TableOptions& opt = {});

/// Uniform grid 2 pi k / n on [0, 2 pi).
std::vector<double> theta_grid(int n_theta);

struct ConvexRange {
    Complex q;
    std::vector<double> grid;
    std::vector<double> support;
    std::vector<Complex> support_points;
    std::vector<CVec> witnesses;
    std::vector<Complex> cloud;
    std::vector<Complex> hull;  // counter-clockwise, no repeated vertex
};

ConvexRange range_cloud(const CMat& t, Complex q, int n_theta, int n_samples, std::uint64_t seed,
                        const TableOptions& opt = {});

/// Add known points of W_q(T) to the cloud and lift the supports they beat.
void absorb_points(ConvexRange& r, std::span<const Complex> pts);

/// Counter-clockwise convex hull (Andrew's monotone chain).
std::vector<Complex> convex_hull(std::vector<Complex> pts);

struct ZeroTest {
    bool contains;
    double margin;  // min over the grid of h(theta)
};
ZeroTest contains_zero(const ConvexRange& r);

/// Support-function sup distance; exact Hausdorff distance for convex sets
/// up to grid resolution. Throws GridMismatch when grids differ.
double hausdorff(const ConvexRange& a, const ConvexRange& b);
double hausdorff(std::span<const double> ha, std::span<const double> hb);

}  // namespace qnr
