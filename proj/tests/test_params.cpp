#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "omherald/params.hpp"

using namespace omh;

TEST_CASE("thermal occupation at cryogenic and elevated temperatures") {
    const double omega = 2.0 * std::numbers::pi * 1e7;
    // Frozen against an independent high-precision evaluation of
    // 1/expm1(hbar Omega / kB T).
    CHECK(params::nbar_from_temperature(0.4, omega) ==
          doctest::Approx(832.9648654280111).epsilon(1e-12));
    CHECK(params::nbar_from_temperature(20.0, omega) ==
          doctest::Approx(41672.73827418883).epsilon(1e-12));
    CHECK(params::nbar_from_temperature(0.0, omega) == 0.0);
    // 100 nK: occupation underflows cleanly instead of dividing by zero
    CHECK(params::nbar_from_temperature(1e-7, omega) < 1e-300);
    CHECK_THROWS_AS(params::nbar_from_temperature(-1.0, omega), std::invalid_argument);
}

TEST_CASE("cavity linewidth from length and finesse") {
    params::PhysicalSetup s;
    s.cavity_length_m = 1e-3;
    s.finesse = 5e4;
    s.omega_mech = 2.0 * std::numbers::pi * 1e7;
    const auto p = params::derive_dimensionless(s, params::DetuningMode::Stokes);
    // kappa/Omega = pi c / (L F) / (2 pi f) = c / (2 L F f) exactly
    CHECK(p.kappa == doctest::Approx(0.299792458).epsilon(1e-12));
    CHECK(p.delta == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(p.gamma == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("detuning modes set the sign of delta") {
    params::PhysicalSetup s;
    CHECK(params::derive_dimensionless(s, params::DetuningMode::Stokes).delta ==
          doctest::Approx(-1.0));
    CHECK(params::derive_dimensionless(s, params::DetuningMode::AntiStokes).delta ==
          doctest::Approx(1.0));
    s.detuning0 = -0.5 * s.omega_mech;
    CHECK(params::derive_dimensionless(s, params::DetuningMode::Custom).delta ==
          doctest::Approx(-0.5));
}

TEST_CASE("dimensionless parameters are scale invariant") {
    params::PhysicalSetup a;
    a.cavity_length_m = 1e-3;
    a.finesse = 5e4;
    a.mass_kg = 5e-11;
    a.omega_mech = 2.0 * std::numbers::pi * 1e7;
    a.quality = 1e6;
    a.input_power_w = 2e-6;
    a.temperature_k = 0.4;

    // Double the mechanical frequency and rescale the setup so every
    // dimensionless combination is unchanged.
    params::PhysicalSetup b = a;
    b.omega_mech = 2.0 * a.omega_mech;
    b.finesse = a.finesse / 2.0;
    b.mass_kg = a.mass_kg / 4.0;
    b.input_power_w = 4.0 * a.input_power_w;
    b.temperature_k = 2.0 * a.temperature_k;

    const auto pa = params::derive_dimensionless(a, params::DetuningMode::Stokes, 0.1);
    const auto pb = params::derive_dimensionless(b, params::DetuningMode::Stokes, 0.1);
    CHECK(pb.kappa == doctest::Approx(pa.kappa).epsilon(1e-12));
    CHECK(pb.g == doctest::Approx(pa.g).epsilon(1e-6));
    CHECK(pb.gamma == doctest::Approx(pa.gamma).epsilon(1e-12));
    CHECK(pb.delta == doctest::Approx(pa.delta).epsilon(1e-12));
    CHECK(pb.nbar == doctest::Approx(pa.nbar).epsilon(1e-9));
    CHECK(pb.n0 == pa.n0);
}

TEST_CASE("regime report grades the approximation hierarchy") {
    params::DimensionlessParams p;
    p.kappa = 0.3;
    p.g = 0.09;
    p.gamma = 1e-6;
    p.nbar = 0.0;

    auto r = params::check_regime(p, params::Protocol::Pulsed, 10.0);
    CHECK(r.sideband == params::RegimeGrade::Marginal);
    CHECK(r.coupling == params::RegimeGrade::Marginal);
    CHECK(r.window_ok);
    CHECK(r.window_upper == doctest::Approx(1.0 / (0.09 * 0.09)));
    CHECK(r.thermal_ok);
    CHECK(r.overall == params::RegimeGrade::Marginal);

    // Outside the window: pulse longer than the counter-rotating bound.
    auto r2 = params::check_regime(p, params::Protocol::Pulsed, 200.0);
    CHECK_FALSE(r2.window_ok);
    CHECK(r2.overall == params::RegimeGrade::Violated);

    // Hot and slow: thermal decoherence flag trips.
    params::DimensionlessParams hot = p;
    hot.nbar = 5e4;
    hot.gamma = 1e-3;
    auto r3 = params::check_regime(hot, params::Protocol::Pulsed, 60.0);
    CHECK_FALSE(r3.thermal_ok);

    // Continuous protocol grades g ~ kappa as good.
    params::DimensionlessParams cw;
    cw.kappa = 0.4;
    cw.g = 0.4;
    auto r4 = params::check_regime(cw, params::Protocol::Cw, 10.0);
    CHECK(r4.coupling == params::RegimeGrade::Satisfied);

    CHECK(params::describe(r).find("overall") != std::string::npos);
}

TEST_CASE("parameter validation rejects nonsense") {
    params::DimensionlessParams p;
    p.kappa = -0.1;
    CHECK_THROWS_AS(params::validate(p), std::invalid_argument);
    params::DetectorModel d;
    d.eta = 0.0;
    CHECK_THROWS_AS(params::validate(d), std::invalid_argument);
    d.eta = 0.5;
    d.dark = 1.0;
    CHECK_THROWS_AS(params::validate(d), std::invalid_argument);
}
