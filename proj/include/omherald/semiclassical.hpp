#pragma once

// Mean-field (classical) cavity + mirror dynamics used to pick operating
// points and to check that a drive actually reaches the assumed plateau.
// All quantities dimensionless: time in 1/Omega, rates in Omega.

#include <complex>
#include <string>
#include <vector>

namespace omh::semiclassical {

struct MeanFieldState {
    std::complex<double> alpha{0.0, 0.0};  // cavity amplitude
    double q = 0.0;                        // mirror position quadrature
    double p = 0.0;                        // mirror momentum quadrature
};

enum class DriveShape { Constant, FlatTop };

struct DriveEnvelope {
    DriveShape shape = DriveShape::Constant;
    // Constant: eps(t) = amplitude for all t.
    double amplitude = 0.0;
    // FlatTop: sqrt(2 kappa photon_number) * f(t) with f a unit-norm flat-top
    // of duration tau and cosine ramps of length edge_fraction * tau.
    double photon_number = 0.0;
    double tau = 0.0;
    double edge_fraction = 0.05;

    std::complex<double> value(double t, double kappa) const;
};

struct ModelParams {
    double kappa = 0.3;
    double gamma = 1e-6;
    double delta0 = -1.0;  // bare detuning / Omega
    double g0 = 1e-4;      // single-photon coupling / Omega
};

struct PlateauReport {
    bool valid = false;            // true when a plateau window existed
    double alpha_mean = 0.0;       // mean |alpha| over the plateau
    double alpha_variation = 0.0;  // max relative deviation of |alpha|
    double delta_mean = 0.0;       // mean effective detuning delta0 - g0 q
    double delta_variation = 0.0;  // max relative deviation of the detuning
};

struct Trajectory {
    std::vector<double> times;
    std::vector<MeanFieldState> states;
    PlateauReport plateau;
};

// Integrate the coupled mean-field equations
//   d alpha/dt = -(i (delta0 - g0 q) + kappa) alpha + eps(t)
//   d q/dt     = p
//   d p/dt     = -q - gamma p + g0 |alpha|^2
// with an adaptive dormand-prince stepper (rel 1e-9, abs 1e-12). Sampled at
// n_samples uniform times. Throws IntegrationError when step control fails.
Trajectory evolve_mean_field(const ModelParams& m, const DriveEnvelope& drive,
                             MeanFieldState initial, double t_end, int n_samples = 512);

// Self-consistent constant-drive steady state (fixed-point iteration on the
// static mirror displacement). Returns the state and the effective detuning.
std::pair<MeanFieldState, double> steady_state_means(const ModelParams& m, double eps);

// CSV export: t, Re alpha, Im alpha, q, p (one row per sample).
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace omh::semiclassical
