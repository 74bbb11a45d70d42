#pragma once

// Scenario-driven sweeps: JSON config in, deterministic CSV + manifest out.

#include <string>
#include <vector>

#include "omherald/params.hpp"
#include "omherald/steady.hpp"

namespace omh::scenario {

// One sweep axis, resolved to explicit values at load time. Supported
// parameter names: tau, n0, nbar, T, nu, tau_m, gamma_f, eta, dark,
// g, kappa, gamma, delta. "T" is bath temperature in kelvin and maps to
// nbar through the scenario's mechanical frequency.
struct AxisSpec {
    std::string param;
    std::vector<double> values;
};

struct WignerGridSpec {
    double half_extent = 0.0;  // 0 = automatic from the conditional state
    int points = 201;
};

struct Scenario {
    std::string name;
    params::Protocol protocol = params::Protocol::Pulsed;
    params::DimensionlessParams base;
    params::DetectorModel detector;
    double tau = 10.0;             // pulse area duration (pulsed protocols)
    steady::FilterSpec filter;     // continuous protocol only
    double omega_mech = 2.0 * 3.14159265358979323846 * 1e7;  // rad/s, for T axes
    std::vector<AxisSpec> axes;
    std::vector<std::string> outputs = {"E_N", "p_click", "N_W"};
    WignerGridSpec wigner;
};

// Parse a config file holding either one scenario object or a list under
// "scenarios". Throws std::runtime_error with a line-oriented message on
// malformed input.
std::vector<Scenario> load_scenarios(const std::string& path);

struct ResultTable {
    std::vector<std::string> columns;            // axes, then outputs
    std::vector<std::vector<double>> rows;       // NaN entries where failed
    std::vector<std::string> row_errors;         // empty string when clean
};

// Evaluate the full cartesian grid. Points run on `jobs` threads; results
// are assembled by index so the table is identical for any job count.
// Per-point physics failures (unstable drift, truncation) land in the error
// column instead of aborting the sweep.
ResultTable run_scenario(const Scenario& s, int jobs = 1);

// CSV writer: header row, then %.17g doubles, error message last.
void write_csv(const ResultTable& t, const std::string& path);

// Sidecar metadata (scenario echo, column list, code version, calibration
// residuals, timestamp).
void write_manifest(const Scenario& s, const ResultTable& t, const std::string& csv_name,
                    const std::string& path);

// Human-readable regime report for the scenario's base parameter point.
std::string validate_report(const Scenario& s);

// Conditional mechanical Wigner function on a square grid at the scenario's
// base point, written as x,p,W rows.
void write_wigner_csv(const Scenario& s, const std::string& path);

inline constexpr const char* kCodeVersion = "0.1.0";

}  // namespace omh::scenario
