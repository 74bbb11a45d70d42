#pragma once

// Number-basis representation of the pulsed-protocol output state and the
// threshold-detector POVM applied to it. Serves as the independent route
// against which the Gaussian-toolbox results are checked, and provides the
// exact conditional phonon distribution for Wigner evaluation.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "omherald/params.hpp"

namespace omh::fockrep {

// Two-mode output of the lossless pulsed interaction acting on
// |0>_opt (x) thermal(n0)_mech. Each thermal component |n> stays pure, so
// block n of the density matrix is a rank-one outer product in the photon
// index with a fixed i^{k-l} phase pattern:
//   <k, n+k| rho |l, n+l> = i^{k-l} amp[n][k] amp[n][l].
struct FockBipartiteState {
    int nmax = 0;        // phonon blocks kept: n = 0..nmax
    double n0 = 0.0;     // initial thermal occupation
    double r = 0.0;      // two-mode squeezing parameter
    std::vector<Eigen::VectorXd> amp;  // amp[n][k], k up to a per-block cutoff

    double trace() const;
    std::complex<double> element(int n, int k, int l) const;
    // Two-mode covariance matrix in (q, p, X, Y) ordering, from the exact
    // moments of the truncated state.
    Eigen::Matrix4d covariance_matrix() const;
};

// Build the truncated output state. Block n keeps photon numbers k with
// relative amplitude above machine noise; throws TruncationError if the
// trace defect exceeds tail_tol at the cap.
FockBipartiteState pulsed_output_state(double n0, double r, int nmax);

// Smallest nmax with truncated-trace defect below tail_tol (capped at 512).
int adaptive_nmax(double n0, double r, double tail_tol = 1e-10);

// Logarithmic negativity (base 2) from the partial transpose, exploiting the
// conserved total-excitation blocks of the transposed matrix.
double log_negativity(const FockBipartiteState& state);

// Closed-form click probability of the threshold detector on the optical
// mode: p = 1 - (1 - dark) / (1 + eta nu^2 (1 + n0)), nu = sinh r.
double p_click_closed(const params::DetectorModel& det, double n0, double r);

// Conditional (unnormalized) phonon-number weights of the mechanical mode
// after a click; weights.sum() equals p_click. Length adapts until the
// remaining geometric tail is below tail_tol.
Eigen::VectorXd conditional_weights_closed(const params::DetectorModel& det, double n0,
                                           double r, double tail_tol = 1e-14);

// Brute-force application of the threshold POVM to a truncated state.
// Returns the unnormalized conditional phonon weights and p_click summed
// from the truncated blocks. Used as the oracle for the closed forms.
std::pair<Eigen::VectorXd, double> apply_threshold_povm(const FockBipartiteState& state,
                                                        const params::DetectorModel& det);

// Wigner function of a phase-insensitive phonon mixture with (unnormalized)
// weights w_k at radius |z| = sqrt(x^2 + p^2): sum over scaled Laguerre
// terms, normalized by the weight sum.
double wigner_mixture(const Eigen::VectorXd& weights, double x, double p);
double wigner_mixture_radial(const Eigen::VectorXd& weights, double radius);

}  // namespace omh::fockrep
