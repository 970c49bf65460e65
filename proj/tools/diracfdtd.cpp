// diracfdtd - command-line front end for the Dirac FDTD simulator.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blow-up,
// 4 I/O error. Thread count is controlled by OMP_NUM_THREADS; there is
// no other environment dependence.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diracfdtd/io.hpp"
#include "diracfdtd/scenario.hpp"
#include "diracfdtd/scenario_run.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_blowup = 3;
constexpr int exit_io = 4;

std::string scenario_name_from_path(const std::string& path) {
    std::filesystem::path p(path);
    std::string stem = p.stem().string();
    return stem.empty() ? "scenario" : stem;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac-equation FDTD wave-packet simulator"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "List bundled scenario presets and exit");

    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or preset");
    std::string scenario_file;
    std::string preset;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    bool validate_only = false;
    run_cmd->add_option("scenario", scenario_file, "Scenario configuration file");
    run_cmd->add_option("--preset", preset, "Use a bundled preset instead of a file");
    run_cmd->add_option("--out", out_dir, "Output directory root (default: out)");
    run_cmd->add_option("--set", overrides,
                        "Override a key, e.g. --set stepper.particle=positron (repeatable)");
    run_cmd->add_flag("--validate-only", validate_only,
                      "Parse and validate the scenario, then exit without running");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& [name, text] : dfdtd::preset_catalog()) std::printf("%s\n", name.c_str());
        return exit_ok;
    }
    if (!run_cmd->parsed()) {
        std::fprintf(stderr, "%s\n", app.help().c_str());
        return exit_config;
    }
    if (scenario_file.empty() == preset.empty()) {
        std::fprintf(stderr, "error: give exactly one of a scenario file or --preset\n");
        return exit_config;
    }

    try {
        std::string text;
        std::string name;
        if (!preset.empty()) {
            text = dfdtd::preset_text(preset);
            name = preset;
        } else {
            text = dfdtd::detail::read_file(scenario_file);
            name = scenario_name_from_path(scenario_file);
        }
        for (const auto& o : overrides) text = dfdtd::apply_override(text, o);

        dfdtd::Scenario sc = dfdtd::parse_scenario(text, name);
        if (validate_only) {
            std::printf("%s: valid\n", sc.name.c_str());
            return exit_ok;
        }

        const auto result = dfdtd::run_scenario(sc, out_dir);
        std::printf("%s: %s, %zu records, outputs in %s\n", sc.name.c_str(),
                    result.status == dfdtd::RunStatus::Ok ? "ok" : "numerical blow-up",
                    result.series.records.size(), result.output_dir.string().c_str());
        return result.status == dfdtd::RunStatus::Ok ? exit_ok : exit_blowup;
    } catch (const dfdtd::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return exit_config;
    } catch (const dfdtd::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return exit_io;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    }
}
