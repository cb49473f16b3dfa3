#pragma once

// Classical radii. The numerical radius and Crawford number come from the
// support function of the classical range W(T),
//
//   h_W(theta) = lambda_max(Re(e^{-i theta} T)),
//
// scanned on a uniform angle grid and refined by golden-section search.

#include <variant>
#include <vector>

#include "qnr/exec.hpp"
#include "qnr/matcore.hpp"
#include "qnr/qrange.hpp"

namespace qnr {

struct RadiusResult {
    double value = 0.0;
    std::variant<CVec, Complex> witness;
    int iterations = 0;
    bool converged = false;
};

struct PencilOptions {
    int grid = 720;
    double angle_tol = 1e-10;
    Exec exec = Exec::Parallel;
};

/// h_W(theta) for one angle.
double pencil_support(const CMat& t, double theta);

/// h_W on the uniform grid 2 pi k / n.
std::vector<double> pencil_scan(const CMat& t, int n, Exec exec = Exec::Parallel);

/// w(T) = max_theta h_W(theta); witness is the maximising unit vector.
RadiusResult numerical_radius(const CMat& t, const PencilOptions& opt = {});

/// c(T) = max(0, max_theta -h_W(theta)); witness is the nearest point of W(T)
/// found (a complex scalar).
RadiusResult crawford(const CMat& t, const PencilOptions& opt = {});

/// m(T) = min over complex lambda of |T - lambda I|; witness is lambda.
/// The objective is convex, so a nested golden-section search (outer over
/// Re lambda, exact inner minimisation over Im lambda) converges to the
/// global minimum. The search box is centred at trace(T)/n with radius
/// |T - trace(T)/n|, which contains every minimiser.
RadiusResult transcendental_radius(const CMat& t, double tol = 1e-11);

/// sqrt(sup_x |Tx|^2 - |<Tx, x>|^2), i.e. omega_0(T) by sphere ascent.
RadiusResult prasanna_radius(const CMat& t, const SphereOptions& opt = {});

/// AB + BA.
CMat anticommutator(const CMat& a, const CMat& b);

}  // namespace qnr
