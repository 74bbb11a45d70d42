#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "omherald/scenario.hpp"

using namespace omh;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& stem, const std::string& ext) {
    return fs::temp_directory_path() / ("omherald_test_" + stem + ext);
}

fs::path write_config(const std::string& stem, const std::string& body) {
    const fs::path p = temp_file(stem, ".json");
    std::ofstream out(p);
    out << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kPulsedSweep = R"({
  "name": "sweep",
  "protocol": "pulsed",
  "params": {"kappa": 0.3, "g": 0.09, "gamma": 1e-6, "delta": -1.0, "n0": 0.1},
  "detector": {"eta": 0.6, "dark": 0.0},
  "axes": [
    {"param": "tau", "values": [5.0, 10.0, 15.0]},
    {"param": "n0", "start": 0.0, "stop": 1.0, "count": 4}
  ]
})";

}  // namespace

TEST_CASE("axis specifications resolve to explicit grids") {
    const auto path = write_config("axes", R"({
      "protocol": "pulsed",
      "axes": [
        {"param": "tau", "start": 1.0, "stop": 3.0, "count": 5},
        {"param": "eta", "start": 0.01, "stop": 1.0, "count": 3, "scale": "log"},
        {"param": "n0", "values": [0.0, 0.25]}
      ]
    })");
    const auto list = scenario::load_scenarios(path.string());
    REQUIRE(list.size() == 1);
    const auto& s = list[0];
    REQUIRE(s.axes.size() == 3);
    CHECK(s.axes[0].values == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
    CHECK(s.axes[1].values[0] == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(s.axes[1].values[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s.axes[1].values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.axes[2].values == std::vector<double>{0.0, 0.25});
    fs::remove(path);
}

TEST_CASE("config errors carry actionable messages") {
    CHECK_THROWS_WITH_AS(scenario::load_scenarios("/nonexistent/path.json"),
                         doctest::Contains("cannot open config file"), std::runtime_error);

    const auto bad_json = write_config("badjson", "{ not json");
    CHECK_THROWS_WITH_AS(scenario::load_scenarios(bad_json.string()),
                         doctest::Contains("config parse error"), std::runtime_error);
    fs::remove(bad_json);

    const auto bad_axis = write_config(
        "badaxis", R"({"axes": [{"param": "bogus", "values": [1.0]}]})");
    CHECK_THROWS_WITH_AS(scenario::load_scenarios(bad_axis.string()),
                         doctest::Contains("unknown axis param"), std::runtime_error);
    fs::remove(bad_axis);

    const auto bad_proto = write_config("badproto", R"({"protocol": "telepathy"})");
    CHECK_THROWS_WITH_AS(scenario::load_scenarios(bad_proto.string()),
                         doctest::Contains("unknown protocol"), std::runtime_error);
    fs::remove(bad_proto);

    const auto bad_log = write_config("badlog", R"({
      "axes": [{"param": "tau", "start": -1.0, "stop": 2.0, "count": 3, "scale": "log"}]
    })");
    CHECK_THROWS_WITH_AS(scenario::load_scenarios(bad_log.string()),
                         doctest::Contains("log scale needs positive endpoints"),
                         std::runtime_error);
    fs::remove(bad_log);

    const auto bad_out = write_config("badout", R"({"outputs": ["E_N", "magic"]})");
    CHECK_THROWS_WITH_AS(scenario::load_scenarios(bad_out.string()),
                         doctest::Contains("unknown output"), std::runtime_error);
    fs::remove(bad_out);
}

TEST_CASE("a scenarios list parses each entry with defaults filled in") {
    const auto path = write_config("list", R"({
      "scenarios": [
        {"name": "first", "protocol": "cw",
         "params": {"kappa": 0.4, "g": 0.4, "delta": 1.0},
         "filter": {"shape": "lorentzian", "nu": -1.0, "gamma_f": 0.3}},
        {"protocol": "pulsed_thermal", "params": {"T": 0.4}, "omega_mech_hz": 1e7}
      ]
    })");
    const auto list = scenario::load_scenarios(path.string());
    REQUIRE(list.size() == 2);
    CHECK(list[0].name == "first");
    CHECK(list[0].protocol == params::Protocol::Cw);
    CHECK(list[0].filter.shape == steady::FilterShape::Lorentzian);
    CHECK(list[0].filter.gamma_f == 0.3);
    CHECK(list[1].name == "scenario2");
    CHECK(list[1].protocol == params::Protocol::PulsedThermal);
    // 0.4 K at 10 MHz
    CHECK(list[1].base.nbar == doctest::Approx(832.9648654280111).epsilon(1e-12));
    fs::remove(path);
}

TEST_CASE("sweep results are independent of the job count") {
    const auto path = write_config("determinism", kPulsedSweep);
    const auto s = scenario::load_scenarios(path.string())[0];
    fs::remove(path);

    const auto serial = scenario::run_scenario(s, 1);
    const auto parallel = scenario::run_scenario(s, 4);
    REQUIRE(serial.rows.size() == 12);
    REQUIRE(parallel.rows.size() == 12);
    for (size_t r = 0; r < serial.rows.size(); ++r) {
        REQUIRE(serial.rows[r].size() == parallel.rows[r].size());
        for (size_t c = 0; c < serial.rows[r].size(); ++c) {
            CHECK(serial.rows[r][c] == parallel.rows[r][c]);
        }
        CHECK(serial.row_errors[r] == parallel.row_errors[r]);
        CHECK(serial.row_errors[r].empty());
    }

    const auto csv_a = temp_file("det_a", ".csv");
    const auto csv_b = temp_file("det_b", ".csv");
    scenario::write_csv(serial, csv_a.string());
    scenario::write_csv(parallel, csv_b.string());
    CHECK(slurp(csv_a) == slurp(csv_b));
    fs::remove(csv_a);
    fs::remove(csv_b);
}

TEST_CASE("row ordering walks the first axis outermost") {
    const auto path = write_config("ordering", kPulsedSweep);
    const auto s = scenario::load_scenarios(path.string())[0];
    fs::remove(path);
    const auto t = scenario::run_scenario(s, 2);
    // columns: tau, n0, E_N, p_click, N_W
    REQUIRE(t.columns.size() == 6);
    CHECK(t.columns[0] == "tau");
    CHECK(t.columns[1] == "n0");
    CHECK(t.columns.back() == "error");
    for (size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(t.rows[r][0] == s.axes[0].values[r / 4]);
        CHECK(t.rows[r][1] == doctest::Approx(s.axes[1].values[r % 4]).epsilon(1e-15));
    }
    // longer pulses entangle more at fixed n0
    CHECK(t.rows[8][2] > t.rows[4][2]);
    CHECK(t.rows[4][2] > t.rows[0][2]);
}

TEST_CASE("temperature axes map through the mechanical frequency") {
    const auto by_temp = write_config("bytemp", R"({
      "protocol": "pulsed_thermal", "omega_mech_hz": 1e7,
      "params": {"kappa": 0.3, "g": 0.09, "gamma": 1e-6, "delta": -1.0, "n0": 0.1},
      "axes": [{"param": "T", "values": [0.4]}]
    })");
    const auto by_nbar = write_config("bynbar", R"({
      "protocol": "pulsed_thermal",
      "params": {"kappa": 0.3, "g": 0.09, "gamma": 1e-6, "delta": -1.0, "n0": 0.1},
      "axes": [{"param": "nbar", "values": [832.9648654280111]}]
    })");
    const auto sa = scenario::load_scenarios(by_temp.string())[0];
    const auto sb = scenario::load_scenarios(by_nbar.string())[0];
    fs::remove(by_temp);
    fs::remove(by_nbar);
    const auto ta = scenario::run_scenario(sa, 1);
    const auto tb = scenario::run_scenario(sb, 1);
    REQUIRE(ta.rows.size() == 1);
    REQUIRE(tb.rows.size() == 1);
    for (size_t c = 1; c < ta.rows[0].size(); ++c) {
        CHECK(ta.rows[0][c] == doctest::Approx(tb.rows[0][c]).epsilon(1e-12));
    }
}

TEST_CASE("per-point failures land in the error column, not as exceptions") {
    const auto path = write_config("unstable", R"({
      "name": "unstable", "protocol": "cw",
      "params": {"kappa": 0.3, "g": 0.3, "gamma": 1e-6, "delta": -1.0},
      "filter": {"nu": -1.0, "tau_m": 5.0},
      "axes": [{"param": "delta", "values": [1.0, -1.0]}]
    })");
    const auto s = scenario::load_scenarios(path.string())[0];
    fs::remove(path);
    const auto t = scenario::run_scenario(s, 1);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.row_errors[0].empty());          // red-detuned: damped, stable
    CHECK_FALSE(t.row_errors[1].empty());    // blue-detuned above threshold: runaway
    CHECK(std::isnan(t.rows[1][1]));
    CHECK(t.row_errors[1].find(',') == std::string::npos);  // sanitized for CSV

    const auto csv = temp_file("unstable", ".csv");
    scenario::write_csv(t, csv.string());
    std::istringstream lines(slurp(csv));
    std::string line;
    int n_lines = 0;
    while (std::getline(lines, line)) ++n_lines;
    CHECK(n_lines == 3);  // header + one row per point, even the failed one
    fs::remove(csv);
}

TEST_CASE("manifest records columns, version, and calibration residuals") {
    const auto path = write_config("manifest", kPulsedSweep);
    const auto s = scenario::load_scenarios(path.string())[0];
    fs::remove(path);
    auto t = scenario::run_scenario(s, 2);
    const auto mpath = temp_file("manifest", ".json");
    scenario::write_manifest(s, t, "sweep.csv", mpath.string());
    const auto j = nlohmann::json::parse(slurp(mpath));
    fs::remove(mpath);
    CHECK(j.at("name") == "sweep");
    CHECK(j.at("csv") == "sweep.csv");
    CHECK(j.at("n_rows") == 12);
    CHECK(j.at("code_version") == scenario::kCodeVersion);
    CHECK(j.at("columns").size() == t.columns.size());
    CHECK(j.at("calibration").at("vacuum_wigner_residual").get<double>() < 1e-15);
    CHECK(j.at("calibration").at("squeeze_map_symplectic_residual").get<double>() < 1e-12);
    CHECK(j.at("scenario").at("params").at("g") == 0.09);
}

TEST_CASE("wigner export covers the requested grid") {
    const auto path = write_config("wigner", R"({
      "protocol": "pulsed",
      "params": {"kappa": 0.3, "g": 0.09, "gamma": 1e-6, "delta": -1.0, "n0": 0.1},
      "pulse": {"tau": 30.0},
      "detector": {"eta": 0.6},
      "wigner": {"points": 21}
    })");
    const auto s = scenario::load_scenarios(path.string())[0];
    fs::remove(path);
    const auto wpath = temp_file("wigner", ".csv");
    scenario::write_wigner_csv(s, wpath.string());
    std::istringstream lines(slurp(wpath));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "x,p,W");
    int rows = 0;
    bool has_negative = false;
    while (std::getline(lines, line)) {
        ++rows;
        const auto last = line.rfind(',');
        if (std::stod(line.substr(last + 1)) < 0.0) has_negative = true;
    }
    CHECK(rows == 21 * 21);
    CHECK(has_negative);  // heralded state carries a negative dip at the origin
    fs::remove(wpath);
}

TEST_CASE("validate report names the scenario and flags instability") {
    const auto path = write_config("validate", R"({
      "scenarios": [
        {"name": "ok", "protocol": "cw",
         "params": {"kappa": 0.4, "g": 0.4, "gamma": 1e-6, "delta": 1.0},
         "filter": {"nu": -1.0, "tau_m": 5.0}},
        {"name": "runaway", "protocol": "cw",
         "params": {"kappa": 0.3, "g": 0.3, "gamma": 1e-6, "delta": -1.0},
         "filter": {"nu": -1.0, "tau_m": 5.0}}
      ]
    })");
    const auto list = scenario::load_scenarios(path.string());
    fs::remove(path);
    const auto ok = scenario::validate_report(list[0]);
    const auto bad = scenario::validate_report(list[1]);
    CHECK(ok.find("ok:") == 0);
    CHECK(ok.find("stable") != std::string::npos);
    CHECK(bad.find("UNSTABLE") != std::string::npos);
}
