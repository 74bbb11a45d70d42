#include "omherald/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "omherald/gaussian.hpp"
#include "omherald/negativity.hpp"
#include "omherald/pulsed.hpp"

namespace omh::scenario {

using json = nlohmann::json;

namespace {

const std::vector<std::string> kAxisParams = {"tau", "n0", "nbar", "T", "nu", "tau_m",
                                              "gamma_f", "eta", "dark", "g", "kappa",
                                              "gamma", "delta"};

std::vector<double> resolve_axis_values(const json& ax, const std::string& where) {
    if (ax.contains("values")) {
        std::vector<double> v = ax.at("values").get<std::vector<double>>();
        if (v.empty()) throw std::runtime_error(where + ": empty values list");
        return v;
    }
    const double start = ax.at("start").get<double>();
    const double stop = ax.at("stop").get<double>();
    const int count = ax.at("count").get<int>();
    if (count < 1) throw std::runtime_error(where + ": count must be >= 1");
    const std::string scale = ax.value("scale", "linear");
    std::vector<double> v(count);
    if (scale == "log") {
        if (start <= 0.0 || stop <= 0.0) {
            throw std::runtime_error(where + ": log scale needs positive endpoints");
        }
        const double la = std::log(start), lb = std::log(stop);
        for (int i = 0; i < count; ++i) {
            v[i] = std::exp(count == 1 ? la : la + (lb - la) * i / (count - 1));
        }
    } else if (scale == "linear") {
        for (int i = 0; i < count; ++i) {
            v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
        }
    } else {
        throw std::runtime_error(where + ": unknown scale '" + scale + "'");
    }
    return v;
}

params::Protocol parse_protocol(const std::string& s, const std::string& where) {
    if (s == "pulsed") return params::Protocol::Pulsed;
    if (s == "pulsed_thermal") return params::Protocol::PulsedThermal;
    if (s == "cw") return params::Protocol::Cw;
    throw std::runtime_error(where + ": unknown protocol '" + s + "'");
}

Scenario parse_scenario(const json& j, int index) {
    const std::string where = "scenario #" + std::to_string(index + 1);
    Scenario s;
    s.name = j.value("name", "scenario" + std::to_string(index + 1));
    s.protocol = parse_protocol(j.value("protocol", "pulsed"), where);

    if (j.contains("params")) {
        const json& p = j.at("params");
        s.base.kappa = p.value("kappa", s.base.kappa);
        s.base.g = p.value("g", s.base.g);
        s.base.gamma = p.value("gamma", s.base.gamma);
        s.base.delta = p.value("delta", s.base.delta);
        s.base.nbar = p.value("nbar", s.base.nbar);
        s.base.n0 = p.value("n0", s.base.n0);
        if (p.contains("T")) {
            s.omega_mech = j.value("omega_mech_hz", 1e7) * 2.0 * 3.14159265358979323846;
            s.base.nbar = params::nbar_from_temperature(p.at("T").get<double>(), s.omega_mech);
        }
    }
    if (j.contains("omega_mech_hz")) {
        s.omega_mech = j.at("omega_mech_hz").get<double>() * 2.0 * 3.14159265358979323846;
    }
    if (j.contains("detector")) {
        s.detector.eta = j.at("detector").value("eta", s.detector.eta);
        s.detector.dark = j.at("detector").value("dark", s.detector.dark);
    }
    if (j.contains("pulse")) {
        s.tau = j.at("pulse").value("tau", s.tau);
    }
    if (j.contains("filter")) {
        const json& f = j.at("filter");
        const std::string shape = f.value("shape", "rect");
        if (shape == "rect") {
            s.filter.shape = steady::FilterShape::Rect;
        } else if (shape == "lorentzian") {
            s.filter.shape = steady::FilterShape::Lorentzian;
        } else {
            throw std::runtime_error(where + ": unknown filter shape '" + shape + "'");
        }
        s.filter.nu = f.value("nu", s.filter.nu);
        s.filter.tau_m = f.value("tau_m", s.filter.tau_m);
        s.filter.gamma_f = f.value("gamma_f", s.filter.gamma_f);
    }
    if (j.contains("axes")) {
        for (const auto& ax : j.at("axes")) {
            AxisSpec spec;
            spec.param = ax.at("param").get<std::string>();
            bool known = false;
            for (const auto& name : kAxisParams) known = known || name == spec.param;
            if (!known) throw std::runtime_error(where + ": unknown axis param '" + spec.param + "'");
            spec.values = resolve_axis_values(ax, where + " axis " + spec.param);
            s.axes.push_back(std::move(spec));
        }
    }
    if (j.contains("outputs")) {
        s.outputs = j.at("outputs").get<std::vector<std::string>>();
        for (const auto& o : s.outputs) {
            if (o != "E_N" && o != "p_click" && o != "N_W" && o != "abs_N_W") {
                throw std::runtime_error(where + ": unknown output '" + o + "'");
            }
        }
    }
    if (j.contains("wigner")) {
        s.wigner.half_extent = j.at("wigner").value("half_extent", 0.0);
        s.wigner.points = j.at("wigner").value("points", 201);
    }
    params::validate(s.base);
    params::validate(s.detector);
    return s;
}

// A fully resolved evaluation point.
struct Point {
    params::DimensionlessParams p;
    params::DetectorModel det;
    double tau;
    steady::FilterSpec filter;
};

void apply_axis(Point& pt, const Scenario& s, const std::string& param, double v) {
    if (param == "tau") pt.tau = v;
    else if (param == "n0") pt.p.n0 = v;
    else if (param == "nbar") pt.p.nbar = v;
    else if (param == "T") pt.p.nbar = params::nbar_from_temperature(v, s.omega_mech);
    else if (param == "nu") pt.filter.nu = v;
    else if (param == "tau_m") pt.filter.tau_m = v;
    else if (param == "gamma_f") pt.filter.gamma_f = v;
    else if (param == "eta") pt.det.eta = v;
    else if (param == "dark") pt.det.dark = v;
    else if (param == "g") pt.p.g = v;
    else if (param == "kappa") pt.p.kappa = v;
    else if (param == "gamma") pt.p.gamma = v;
    else if (param == "delta") pt.p.delta = v;
}

struct PointOutputs {
    double e_n = std::nan("");
    double p_click = std::nan("");
    double n_w = std::nan("");
    std::string error;
};

Eigen::Matrix4d state_cm_for(const Scenario& s, const Point& pt) {
    switch (s.protocol) {
        case params::Protocol::Pulsed: {
            const double grate = pulsed::squeeze_rate(pt.p);
            const double r = pulsed::squeeze_parameter(grate, pt.tau);
            return pulsed::lossless_output_cm(r, pt.p.n0);
        }
        case params::Protocol::PulsedThermal:
            return pulsed::thermal_output_cm(pt.p, pt.tau);
        default:
            return steady::filtered_output_cm(pt.p, pt.filter);
    }
}

PointOutputs evaluate_point(const Scenario& s, const Point& pt) {
    PointOutputs out;
    try {
        const Eigen::Matrix4d sigma = state_cm_for(s, pt);
        out.e_n = gaussian::log_negativity(sigma);
        const auto cond = gaussian::condition_on_click(sigma, pt.det);
        out.p_click = cond.p_click;
        const auto neg = negativity::negativity_grid(cond);
        out.n_w = neg.value;
        if (neg.error_estimate > 1e-4 * std::abs(neg.value) + 1e-8) {
            out.error = "negativity grid error estimate " +
                        std::to_string(neg.error_estimate) + " above threshold";
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

std::string sanitize(std::string msg) {
    for (auto& c : msg) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return msg;
}

}  // namespace

std::vector<Scenario> load_scenarios(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
    std::vector<Scenario> out;
    if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_scenario(j[i], int(i)));
    } else if (j.contains("scenarios")) {
        const auto& list = j.at("scenarios");
        for (size_t i = 0; i < list.size(); ++i) out.push_back(parse_scenario(list[i], int(i)));
    } else {
        out.push_back(parse_scenario(j, 0));
    }
    if (out.empty()) throw std::runtime_error("config " + path + " holds no scenarios");
    return out;
}

ResultTable run_scenario(const Scenario& s, int jobs) {
    ResultTable t;
    for (const auto& ax : s.axes) t.columns.push_back(ax.param);
    for (const auto& o : s.outputs) t.columns.push_back(o);
    t.columns.push_back("error");

    size_t total = 1;
    for (const auto& ax : s.axes) total *= ax.values.size();

    t.rows.assign(total, {});
    t.row_errors.assign(total, "");

    const int n_threads = std::max(1, jobs);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const size_t idx = next.fetch_add(1);
            if (idx >= total) break;
            // decode the mixed-radix index, first axis outermost
            Point pt{s.base, s.detector, s.tau, s.filter};
            std::vector<double> axis_vals(s.axes.size());
            size_t rem = idx;
            for (size_t a = s.axes.size(); a-- > 0;) {
                const auto& ax = s.axes[a];
                const size_t k = rem % ax.values.size();
                rem /= ax.values.size();
                axis_vals[a] = ax.values[k];
                apply_axis(pt, s, ax.param, ax.values[k]);
            }
            const PointOutputs po = evaluate_point(s, pt);
            std::vector<double> row = axis_vals;
            for (const auto& o : s.outputs) {
                if (o == "E_N") row.push_back(po.e_n);
                else if (o == "p_click") row.push_back(po.p_click);
                else if (o == "N_W") row.push_back(po.n_w);
                else row.push_back(std::abs(po.n_w));
            }
            t.rows[idx] = std::move(row);
            t.row_errors[idx] = sanitize(po.error);
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return t;
}

void write_csv(const ResultTable& t, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    for (size_t i = 0; i < t.columns.size(); ++i) {
        std::fprintf(f, "%s%s", i ? "," : "", t.columns[i].c_str());
    }
    std::fputc('\n', f);
    for (size_t r = 0; r < t.rows.size(); ++r) {
        for (const double v : t.rows[r]) std::fprintf(f, "%.17g,", v);
        std::fprintf(f, "%s\n", t.row_errors[r].c_str());
    }
    std::fclose(f);
}

void write_manifest(const Scenario& s, const ResultTable& t, const std::string& csv_name,
                    const std::string& path) {
    json j;
    j["name"] = s.name;
    j["csv"] = csv_name;
    j["columns"] = t.columns;
    j["n_rows"] = t.rows.size();
    j["code_version"] = kCodeVersion;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    j["generated_at"] = buf;

    json cal;
    // Normalization self-check: vacuum Wigner peak and an exactly known
    // symplectic residual.
    Eigen::Vector2d origin(0.0, 0.0);
    const double w0 = gaussian::wigner_gaussian(Eigen::Matrix2d::Identity() * 0.5, origin);
    cal["vacuum_wigner_residual"] = std::abs(w0 - 1.0 / 3.14159265358979323846);
    cal["squeeze_map_symplectic_residual"] = gaussian::symplectic_residual(pulsed::lossless_map(0.7));
    j["calibration"] = cal;

    json sc;
    sc["protocol"] = s.protocol == params::Protocol::Pulsed          ? "pulsed"
                     : s.protocol == params::Protocol::PulsedThermal ? "pulsed_thermal"
                                                                     : "cw";
    sc["params"] = {{"kappa", s.base.kappa}, {"g", s.base.g},       {"gamma", s.base.gamma},
                    {"delta", s.base.delta}, {"nbar", s.base.nbar}, {"n0", s.base.n0}};
    sc["detector"] = {{"eta", s.detector.eta}, {"dark", s.detector.dark}};
    sc["tau"] = s.tau;
    sc["filter"] = {{"shape", s.filter.shape == steady::FilterShape::Rect ? "rect" : "lorentzian"},
                    {"nu", s.filter.nu},
                    {"tau_m", s.filter.tau_m},
                    {"gamma_f", s.filter.gamma_f}};
    json axes = json::array();
    for (const auto& ax : s.axes) {
        axes.push_back({{"param", ax.param}, {"count", ax.values.size()}});
    }
    sc["axes"] = axes;
    j["scenario"] = sc;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
    out << j.dump(2) << "\n";
}

std::string validate_report(const Scenario& s) {
    const double duration = s.protocol == params::Protocol::Cw ? s.filter.tau_m : s.tau;
    const params::Protocol proto = s.protocol;
    const auto rep = params::check_regime(s.base, proto, duration);
    std::ostringstream os;
    os << s.name << ": " << params::describe(rep);
    if (proto == params::Protocol::Cw) {
        const auto st = steady::stability(steady::drift_matrix(s.base));
        os << "; drift " << (st.stable ? "stable" : "UNSTABLE") << " (margin " << st.margin
           << ")";
    }
    return os.str();
}

void write_wigner_csv(const Scenario& s, const std::string& path) {
    Point pt{s.base, s.detector, s.tau, s.filter};
    const Eigen::Matrix4d sigma = state_cm_for(s, pt);
    const auto cond = gaussian::condition_on_click(sigma, pt.det);
    double half = s.wigner.half_extent;
    if (half <= 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cond.sigma_prime,
                                                          Eigen::EigenvaluesOnly);
        half = 4.0 * std::sqrt(es.eigenvalues().maxCoeff());
    }
    const int n = std::max(11, s.wigner.points);
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_wigner_csv: cannot open " + path);
    std::fputs("x,p,W\n", f);
    for (int i = 0; i < n; ++i) {
        const double x = -half + 2.0 * half * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double y = -half + 2.0 * half * j / (n - 1);
            std::fprintf(f, "%.17g,%.17g,%.17g\n", x, y,
                         gaussian::conditional_wigner_value(cond, x, y));
        }
    }
    std::fclose(f);
}

}  // namespace omh::scenario
