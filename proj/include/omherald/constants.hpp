#pragma once

namespace omh::constants {

// CODATA 2018 exact values (SI).
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K
inline constexpr double c_light = 299792458.0;         // m / s

// Default drive laser wavelength when a setup does not specify one.
inline constexpr double default_wavelength_m = 1064e-9;

// Vacuum quadrature variance in our convention ([q, p] = i).
inline constexpr double vacuum_variance = 0.5;

}  // namespace omh::constants
