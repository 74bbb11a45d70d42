#pragma once

// Continuous-drive protocol: steady state of the linearized dynamics and
// the covariance matrix of (mechanics, filtered output mode).

#include <Eigen/Dense>

#include "omherald/params.hpp"

namespace omh::steady {

using Eigen::Matrix4d;

enum class FilterShape { Rect, Lorentzian };

// Temporal mode filter applied to the cavity output field,
//   A = integral k*(s) a_out(t - s) ds,
// k(s) = e^{i nu s} / sqrt(tau_m) on [0, tau_m]        (Rect)
// k(s) = sqrt(2 gamma_f) e^{(i nu - gamma_f) s}, s >= 0 (Lorentzian).
// nu is in units of Omega; nu = -1 selects the Stokes sideband.
struct FilterSpec {
    FilterShape shape = FilterShape::Rect;
    double nu = -1.0;
    double tau_m = 5.0;     // Rect window length (units 1/Omega)
    double gamma_f = 0.2;   // Lorentzian bandwidth (units Omega)
};

// Drift matrix of the linearized fluctuations in (q, p, X, Y); delta is the
// effective detuning at the working point.
Matrix4d drift_matrix(const params::DimensionlessParams& p);

// Diffusion matrix: diag(0, (2 nbar + 1) gamma, kappa, kappa).
Matrix4d diffusion_matrix(const params::DimensionlessParams& p);

struct StabilityReport {
    bool stable = false;
    double margin = 0.0;  // max real part of drift eigenvalues
};

StabilityReport stability(const Matrix4d& k);

// Steady covariance from the Lyapunov equation. Throws UnstableSystemError
// when the drift is not Hurwitz.
Matrix4d steady_state_cm(const params::DimensionlessParams& p);

// Covariance matrix of (mechanics, filtered temporal mode) in steady state,
// assembled from matrix-exponential integrals of the two-time correlations
// (exact for both filter shapes; no frequency quadrature involved).
Matrix4d filtered_output_cm(const params::DimensionlessParams& p, const FilterSpec& f);

// Independent frequency-domain route: filtered spectral density integrated
// with adaptive Gauss-Kronrod panels over [-range, range] (units Omega).
// Rect filter only. Used to cross-validate filtered_output_cm.
Matrix4d filtered_output_cm_spectral(const params::DimensionlessParams& p, const FilterSpec& f,
                                     double range = 20.0, double abs_tol = 1e-10);

}  // namespace omh::steady
