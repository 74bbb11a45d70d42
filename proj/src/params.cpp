#include "omherald/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "omherald/constants.hpp"

namespace omh::params {

namespace {

RegimeGrade grade_small(double x) {
    if (x < 0.15) return RegimeGrade::Satisfied;
    if (x < 0.6) return RegimeGrade::Marginal;
    return RegimeGrade::Violated;
}

RegimeGrade worst(RegimeGrade a, RegimeGrade b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

const char* grade_name(RegimeGrade g) {
    switch (g) {
        case RegimeGrade::Satisfied: return "satisfied";
        case RegimeGrade::Marginal: return "marginal";
        default: return "violated";
    }
}

}  // namespace

double nbar_from_temperature(double temperature_k, double omega_rad_s) {
    if (temperature_k < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (omega_rad_s <= 0.0) throw std::invalid_argument("omega must be > 0");
    if (temperature_k == 0.0) return 0.0;
    const double x = constants::hbar * omega_rad_s / (constants::k_boltzmann * temperature_k);
    return 1.0 / std::expm1(x);
}

DimensionlessParams derive_dimensionless(const PhysicalSetup& s, DetuningMode mode, double n0) {
    if (s.cavity_length_m <= 0 || s.finesse <= 0 || s.mass_kg <= 0 || s.omega_mech <= 0 ||
        s.quality <= 0 || s.wavelength_m <= 0 || s.input_power_w < 0) {
        throw std::invalid_argument("physical setup values must be positive");
    }
    const double omega = s.omega_mech;
    const double kappa = std::numbers::pi * constants::c_light / (s.cavity_length_m * s.finesse);
    const double omega_cav = 2.0 * std::numbers::pi * constants::c_light / s.wavelength_m;
    const double x_zpf = std::sqrt(constants::hbar / (s.mass_kg * omega));
    const double g0 = omega_cav * x_zpf / s.cavity_length_m;

    double delta0;
    switch (mode) {
        case DetuningMode::Stokes: delta0 = -omega; break;
        case DetuningMode::AntiStokes: delta0 = omega; break;
        default: delta0 = s.detuning0; break;
    }
    const double omega_laser = omega_cav - delta0;
    // Intracavity photon number of the classical working point at detuning
    // delta0, then the linearized coupling g = g0 sqrt(n_cav).
    const double n_cav =
        4.0 * kappa * s.input_power_w /
        ((delta0 * delta0 + kappa * kappa) * constants::hbar * omega_laser);
    const double g = g0 * std::sqrt(n_cav);

    DimensionlessParams p;
    p.kappa = kappa / omega;
    p.g = g / omega;
    p.gamma = 1.0 / s.quality;
    p.delta = delta0 / omega;
    p.nbar = nbar_from_temperature(s.temperature_k, omega);
    p.n0 = n0;
    return p;
}

RegimeReport check_regime(const DimensionlessParams& p, Protocol protocol, double tau) {
    RegimeReport r;
    r.sideband_ratio = p.kappa;
    r.sideband = grade_small(p.kappa);
    r.coupling_ratio = p.kappa > 0 ? p.g / p.kappa : std::numeric_limits<double>::infinity();
    if (protocol == Protocol::Cw) {
        // The continuous protocol works at g ~ kappa; grade the mismatch.
        const double mism = std::abs(r.coupling_ratio - 1.0);
        r.coupling = mism < 0.25   ? RegimeGrade::Satisfied
                     : mism < 1.0 ? RegimeGrade::Marginal
                                  : RegimeGrade::Violated;
    } else {
        r.coupling = grade_small(r.coupling_ratio);
    }
    r.window_lower = tau;
    r.window_upper = p.g > 0 ? 1.0 / (p.g * p.g) : std::numeric_limits<double>::infinity();
    r.window_ok = tau > 1.0 && tau < r.window_upper;
    r.thermal_load = p.nbar * p.gamma * tau;
    r.thermal_ok = r.thermal_load < 1.0;
    r.overall = worst(r.sideband, r.coupling);
    if (!r.window_ok || !r.thermal_ok) r.overall = RegimeGrade::Violated;
    return r;
}

std::string describe(const RegimeReport& r) {
    std::ostringstream os;
    os << "sideband kappa/Omega=" << r.sideband_ratio << " (" << grade_name(r.sideband) << "), "
       << "coupling g/kappa=" << r.coupling_ratio << " (" << grade_name(r.coupling) << "), "
       << "window Omega*tau=" << r.window_lower << " of " << r.window_upper
       << (r.window_ok ? " (ok)" : " (outside)") << ", "
       << "thermal load nbar*gamma*tau=" << r.thermal_load
       << (r.thermal_ok ? " (ok)" : " (decohered)") << "; overall " << grade_name(r.overall);
    return os.str();
}

void validate(const DimensionlessParams& p) {
    if (p.kappa <= 0) throw std::invalid_argument("kappa must be > 0");
    if (p.g < 0) throw std::invalid_argument("g must be >= 0");
    if (p.gamma < 0) throw std::invalid_argument("gamma must be >= 0");
    if (p.nbar < 0) throw std::invalid_argument("nbar must be >= 0");
    if (p.n0 < 0) throw std::invalid_argument("n0 must be >= 0");
    if (!std::isfinite(p.delta)) throw std::invalid_argument("delta must be finite");
}

void validate(const DetectorModel& d) {
    if (!(d.eta > 0.0 && d.eta <= 1.0)) throw std::invalid_argument("eta must be in (0, 1]");
    if (!(d.dark >= 0.0 && d.dark < 1.0)) throw std::invalid_argument("dark must be in [0, 1)");
}

}  // namespace omh::params
