#pragma once

// Wigner-negativity measures for the heralded mechanical state:
// N_W = integral over the region where W < 0 (a non-positive number).

#include <Eigen/Dense>

#include "omherald/gaussian.hpp"

namespace omh::negativity {

struct NegativityResult {
    double value = 0.0;           // signed integral of min(W, 0)
    double error_estimate = 0.0;  // heuristic absolute error
    long evaluations = 0;         // Wigner evaluations spent
};

// Radial route for phase-insensitive phonon mixtures (pulsed protocol):
// bracket the sign changes of W(r) and integrate each negative annulus with
// adaptive quadrature.
NegativityResult negativity_radial(const Eigen::VectorXd& weights, double abs_tol = 1e-10);

// Grid route for a two-Gaussian conditional Wigner function. The negative
// region is contained in the ellipse where the subtracted Gaussian beats the
// first one; the trapezoid grid covers that ellipse's bounding box (padded),
// so narrow dips inside wide thermal states are still resolved. Returns an
// exact zero when the difference is provably nonnegative everywhere.
// The error estimate compares against the embedded half-resolution grid.
NegativityResult negativity_grid(const gaussian::ConditionalWigner& w, int n_points = 801);

}  // namespace omh::negativity
