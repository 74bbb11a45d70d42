// Command line front end: scenario sweeps, regime validation, Wigner dumps.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "omherald/errors.hpp"
#include "omherald/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<omh::scenario::Scenario> load_filtered(const std::string& config,
                                                   const std::vector<std::string>& names) {
    auto all = omh::scenario::load_scenarios(config);
    if (names.empty()) return all;
    std::vector<omh::scenario::Scenario> out;
    for (const auto& s : all) {
        for (const auto& n : names) {
            if (s.name == n) {
                out.push_back(s);
                break;
            }
        }
    }
    if (out.empty()) {
        throw std::runtime_error("no scenario in " + config + " matches the given names");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heralded mechanical state simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = ".";
    int jobs = 1;
    std::vector<std::string> names;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", config, "scenario config (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--scenario", names, "only run scenarios with these names");
        if (with_out) {
            cmd->add_option("--out", out_dir, "output directory");
        }
    };

    CLI::App* run = app.add_subcommand("run", "evaluate scenario sweeps to CSV");
    add_common(run, true);
    run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* validate = app.add_subcommand("validate", "report regime checks per scenario");
    add_common(validate, false);

    CLI::App* wigner = app.add_subcommand("wigner", "dump the conditional Wigner grid");
    add_common(wigner, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        const auto scenarios = load_filtered(config, names);

        if (run->parsed()) {
            fs::create_directories(out_dir);
            bool any_clean = false;
            for (const auto& s : scenarios) {
                const auto table = omh::scenario::run_scenario(s, jobs);
                const std::string csv_name = s.name + ".csv";
                const fs::path csv_path = fs::path(out_dir) / csv_name;
                omh::scenario::write_csv(table, csv_path.string());
                omh::scenario::write_manifest(s, table, csv_name,
                                              (fs::path(out_dir) / (s.name + ".manifest.json"))
                                                  .string());
                size_t failed = 0;
                for (const auto& e : table.row_errors) failed += e.empty() ? 0 : 1;
                std::fprintf(stderr, "%s: %zu points, %zu failed -> %s\n", s.name.c_str(),
                             table.rows.size(), failed, csv_path.c_str());
                if (failed < table.rows.size()) any_clean = true;
            }
            return any_clean ? 0 : 3;
        }

        if (validate->parsed()) {
            for (const auto& s : scenarios) {
                std::printf("%s\n", omh::scenario::validate_report(s).c_str());
            }
            return 0;
        }

        // wigner
        fs::create_directories(out_dir);
        for (const auto& s : scenarios) {
            const fs::path p = fs::path(out_dir) / (s.name + ".wigner.csv");
            omh::scenario::write_wigner_csv(s, p.string());
            std::fprintf(stderr, "%s -> %s\n", s.name.c_str(), p.c_str());
        }
        return 0;
    } catch (const omh::UnstableSystemError& e) {
        std::fprintf(stderr, "physics error: %s (margin %g)\n", e.what(), e.margin);
        return 3;
    } catch (const omh::IntegrationError& e) {
        std::fprintf(stderr, "physics error: %s (t = %g)\n", e.what(), e.last_good_time);
        return 3;
    } catch (const omh::TruncationError& e) {
        std::fprintf(stderr, "physics error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
