#pragma once

// Gaussian-state toolbox for the two-mode mechanics+optics system.
// Quadrature ordering is (q, p, X, Y): mechanical first, optical second.
// Vacuum variance is 1/2, i.e. sigma_vac = I/2 and [q, p] = i.

#include <Eigen/Dense>

#include "omherald/params.hpp"

namespace omh::gaussian {

using Eigen::Matrix2d;
using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector4d;

// Symplectic form for n modes: direct sum of [[0, 1], [-1, 0]].
MatrixXd symplectic_form(int n_modes);

// Zero-mean Gaussian state over 2n quadratures.
struct CovarianceState {
    Matrix4d sigma = Matrix4d::Identity() * 0.5;
};

// Gaussian Wigner function N[sigma](z) at a phase-space point.
double wigner_gaussian(const MatrixXd& sigma, const Eigen::VectorXd& point);

// Logarithmic negativity (base 2) of a 1|1 mode bipartition from the
// partially transposed symplectic eigenvalue. Returns 0 for separable states.
double log_negativity(const Matrix4d& sigma);

// max |(S Omega S^T - Omega)_ij|; zero for exactly symplectic maps.
double symplectic_residual(const MatrixXd& s);

// Uncertainty-relation check: smallest eigenvalue of sigma + (i/2) Omega.
// The state is physical iff the returned value >= -tol.
double physicality_margin(const Matrix4d& sigma);

// Solve K sigma + sigma K^T + D = 0 for sigma (vectorized linear solve).
Matrix4d solve_lyapunov(const Matrix4d& k, const Matrix4d& d);

// Conditional mechanical state after a heralding click on the optical mode,
// represented exactly as a difference of two Gaussians:
//   W'(z) = ( N[sigma_prime](z) - coeff * N[sigma_dprime](z) ) / p_click.
struct ConditionalWigner {
    Matrix2d sigma_prime;   // mechanical marginal (no-measurement part)
    Matrix2d sigma_dprime;  // subtracted no-click part
    double coeff = 0.0;     // (1 - dark) * kappa_eta * 2 / (2 - eta)
    double p_click = 0.0;
};

// Condition the two-mode Gaussian state on a threshold-detector click
// (quantum efficiency folded in analytically, dark counts as an independent
// background). Throws SingularMatrixError if a Schur complement degenerates.
ConditionalWigner condition_on_click(const Matrix4d& sigma, const params::DetectorModel& det);

// Evaluate the conditional Wigner function at mechanical phase-space point
// (x, p).
double conditional_wigner_value(const ConditionalWigner& w, double x, double p);

}  // namespace omh::gaussian
