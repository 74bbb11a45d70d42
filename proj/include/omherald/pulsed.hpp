#pragma once

// Pulsed blue-detuned protocol: lossless two-mode-squeezing input/output
// map, and the exact finite-temperature Bogoliubov map that folds the
// mechanical bath into the pulse window.

#include <Eigen/Dense>
#include <complex>

#include "omherald/params.hpp"

namespace omh::pulsed {

using Eigen::Matrix4d;
using Eigen::Matrix4cd;

// Two-mode-squeezing rate of the adiabatically eliminated cavity,
// G = g^2 / (4 kappa), in units of Omega.
double squeeze_rate(const params::DimensionlessParams& p);

// r(tau) = arccosh(exp(G tau)) for the lossless pulse.
double squeeze_parameter(double G, double tau);

// Lossless input/output map on (q, p, X, Y): mu = cosh r, nu = sinh r,
//   b_out = mu b_in - nu a_in^dag (up to the phase convention fixed by the
//   number-basis output state; see the fockrep module).
Matrix4d lossless_map(double r);

// Output covariance matrix of the lossless pulse on vacuum (x) thermal(n0).
Matrix4d lossless_output_cm(double r, double n0);

// Exact single-pulse envelope constants of the damped protocol.
struct BogoliubovEnvelopes {
    double c_in = 0.0;   // input-packet normalization
    double c_out = 0.0;  // output-packet normalization
    double rho_c = 0.0;  // in/out packet overlap
};

BogoliubovEnvelopes bogoliubov_envelopes(double G, double Gamma, double tau);

// Full 4-mode Bogoliubov map (optical out, mech out, bath-noise pair) in
// annihilation/creation representation plus its quadrature symplectic form.
// Mode order: optical pulse, mechanical mode, two bath noise modes.
struct BogoliubovMap {
    Matrix4cd x;                      // coefficients of a_j
    Matrix4cd y;                      // coefficients of a_j^dag
    Eigen::Matrix<double, 8, 8> s;    // quadrature map, (q1 p1 ... q4 p4)
};

// Builds the first two exact rows from the envelope constants and completes
// the remaining rows by Gram-Schmidt in the Bogoliubov metric. Throws
// std::invalid_argument if G <= Gamma (no net amplification).
BogoliubovMap bogoliubov_map(double G, double Gamma, double tau);

// Output covariance of the damped pulse: optical-mechanical 4x4 block of the
// symplectic map applied to vacuum (x) thermal(n0) (x) bath(nbar)^2.
Matrix4d thermal_output_cm(const params::DimensionlessParams& p, double tau);

}  // namespace omh::pulsed
