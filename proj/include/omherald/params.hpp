#pragma once

// Experimental setup description and conversion to the dimensionless
// parameter set used by every solver (frequencies in units of the
// mechanical frequency, time in units of 1/Omega).

#include <string>

namespace omh::params {

// A concrete cavity optomechanics experiment in SI units.
struct PhysicalSetup {
    double cavity_length_m = 1e-3;
    double finesse = 5e4;
    double mass_kg = 1e-12;
    double omega_mech = 2.0 * 3.14159265358979323846 * 1e7;  // rad/s
    double quality = 1e6;
    double input_power_w = 1e-6;
    double wavelength_m = 1064e-9;
    double temperature_k = 0.0;
    // Cavity detuning Delta0 = omega_cav - omega_laser (rad/s); only used
    // when the detuning mode is Custom.
    double detuning0 = 0.0;
};

enum class DetuningMode {
    Stokes,      // blue-detuned two-mode-squeezing side, Delta0 = -Omega
    AntiStokes,  // red-detuned beam-splitter side, Delta0 = +Omega
    Custom,
};

// Everything the solvers need, in units of the mechanical frequency.
// Detuning convention: delta = +1 selects the anti-Stokes (cooling) side,
// delta = -1 the Stokes (entangling) side.
struct DimensionlessParams {
    double kappa = 0.3;   // cavity amplitude decay / Omega
    double g = 0.09;      // effective linearized coupling / Omega
    double gamma = 1e-6;  // mechanical damping / Omega
    double delta = -1.0;  // effective detuning / Omega
    double nbar = 0.0;    // bath thermal occupation
    double n0 = 0.0;      // initial mechanical occupation (pulsed protocol)
};

// Threshold detector with quantum efficiency eta and dark-count/background
// click probability dark per gate.
struct DetectorModel {
    double eta = 0.6;
    double dark = 0.0;
};

enum class Protocol { Pulsed, PulsedThermal, Cw };

enum class RegimeGrade { Satisfied, Marginal, Violated };

// Diagnostic report on the approximation hierarchy behind the linearized
// adiabatic model. Margins are the small parameters themselves; grades
// bucket them for human consumption.
struct RegimeReport {
    double sideband_ratio = 0.0;  // kappa/Omega, wants << 1
    RegimeGrade sideband = RegimeGrade::Violated;
    double coupling_ratio = 0.0;  // g/kappa; pulsed wants << 1, cw wants ~ 1
    RegimeGrade coupling = RegimeGrade::Violated;
    double window_lower = 0.0;    // Omega*tau, wants >> 1
    double window_upper = 0.0;    // (Omega/g)^2, Omega*tau must stay below
    bool window_ok = false;
    double thermal_load = 0.0;    // nbar * gamma * tau, wants < 1
    bool thermal_ok = false;
    RegimeGrade overall = RegimeGrade::Violated;
};

// Thermal occupation of a mode at omega (rad/s) and temperature T (K).
// Uses expm1 so the cryogenic limit does not round to garbage.
double nbar_from_temperature(double temperature_k, double omega_rad_s);

// Derive the dimensionless set from a physical setup. n0 is the assumed
// mechanical occupation after precooling and is passed through untouched.
DimensionlessParams derive_dimensionless(const PhysicalSetup& setup, DetuningMode mode,
                                         double n0 = 0.0);

// Grade the modelling assumptions for a run of duration tau (units 1/Omega;
// the measurement window tau_m for the continuous protocol).
RegimeReport check_regime(const DimensionlessParams& p, Protocol protocol, double tau);

// One-line human summary of a report.
std::string describe(const RegimeReport& r);

// Throws std::invalid_argument on non-physical values (negative rates,
// eta outside (0, 1], ...).
void validate(const DimensionlessParams& p);
void validate(const DetectorModel& d);

}  // namespace omh::params
