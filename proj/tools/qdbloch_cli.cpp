// Copyright 2026 The qdbloch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdbloch/qdbloch.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numerical_blowup = 3;

qdbloch::Scenario load_with_overrides(const std::string& name_or_path,
                                      const std::vector<std::string>& overrides) {
    qdbloch::Scenario s = qdbloch::resolve_scenario(name_or_path);
    for (const auto& o : overrides) s = qdbloch::apply_override(s, o);
    return s;
}

void print_report(const qdbloch::RunReport& r) {
    std::cout << "scenario            " << r.scenario_name << "\n"
              << "steps               " << r.n_steps << " (dt " << r.dt << " s)\n"
              << "max rho_c11         " << r.max_rho_c11 << "\n"
              << "final rho_c11       " << r.final_rho_c11 << "\n"
              << "max rho_v11         " << r.max_rho_v11 << "\n"
              << "max trace drift     " << r.max_trace_drift_rel << " (relative)\n"
              << "max herm defect     " << r.max_herm_defect_rel << " (relative)\n"
              << "min eigenvalue      " << r.min_eigenvalue_seen << "\n"
              << "injected area       " << r.injected_area << " rad\n"
              << "transmitted area    " << r.transmitted_area << " rad\n"
              << "positivity          " << (r.positivity_ok() ? "ok" : "violated") << "\n"
              << "wall time           " << r.wall_seconds << " s\n";
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled Maxwell-Bloch simulator for quantum-dot media"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_dir;
    std::vector<std::string> overrides;

    auto* run_cmd = app.add_subcommand("run", "run one scenario (registry name or scenario file)");
    run_cmd->add_option("scenario", scenario_arg, "registry name or scenario file path")->required();
    run_cmd->add_option("--override", overrides, "key=value overrides applied to the scenario");
    run_cmd->add_option("--out", out_dir, "output directory (manifest, probes.csv, summary)");

    std::string sweep_param, sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario for each value of one parameter");
    sweep_cmd->add_option("scenario", scenario_arg, "registry name or scenario file path")->required();
    sweep_cmd->add_option("--param", sweep_param, "R0 | k | mode | valence_splitting")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated value list")->required();
    sweep_cmd->add_option("--override", overrides, "key=value overrides applied before the sweep");
    sweep_cmd->add_option("--out", out_dir, "output directory, one subdirectory per run");

    auto* validate_cmd = app.add_subcommand("validate", "dry-run configuration and CFL check");
    validate_cmd->add_option("scenario", scenario_arg, "registry name or scenario file path")->required();
    validate_cmd->add_option("--override", overrides, "key=value overrides");

    auto* list_cmd = app.add_subcommand("list", "list built-in scenarios");

    std::string probes_path;
    auto* plot_cmd = app.add_subcommand("plot", "render probes.csv to SVG line plots");
    plot_cmd->add_option("probes", probes_path, "path to a probes.csv file")->required();
    plot_cmd->add_option("--out", out_dir, "output directory for the SVG files")->default_val(".");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const auto scenario = load_with_overrides(scenario_arg, overrides);
            const auto report = qdbloch::run_scenario(scenario, out_dir);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
            print_report(report);
            if (!out_dir.empty()) std::cout << "outputs in        " << out_dir << "\n";
        } else if (sweep_cmd->parsed()) {
            const auto base = load_with_overrides(scenario_arg, overrides);
            const auto results = qdbloch::sweep(base, sweep_param, split_csv(sweep_values), out_dir);
            for (const auto& r : results) {
                std::cout << "=== " << r.label << " ===\n";
                print_report(r.report);
            }
        } else if (validate_cmd->parsed()) {
            const auto scenario = load_with_overrides(scenario_arg, overrides);
            const auto warnings = qdbloch::validate_scenario(scenario);
            for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
            std::cout << "scenario '" << scenario.name << "' is valid: " << scenario.n_steps()
                      << " steps, courant " << scenario.courant << "\n";
        } else if (list_cmd->parsed()) {
            for (const auto& [name, s] : qdbloch::scenario_registry()) {
                std::cout << name << "  (n_c=" << s.n_c << ", n_v=" << s.n_v
                          << ", R0=" << s.coulomb_r0 << ", mode="
                          << (s.mode == qdbloch::CoulombMode::full ? "full" : "vanishing_intraband")
                          << ")\n";
            }
        } else if (plot_cmd->parsed()) {
            for (const auto& f : qdbloch::plot_probes(probes_path, out_dir)) {
                std::cout << "wrote " << f << "\n";
            }
        }
    } catch (const qdbloch::NonFiniteField& e) {
        std::cerr << "numerical blow-up: " << e.what() << "\n";
        return exit_numerical_blowup;
    } catch (const qdbloch::CflViolation& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const qdbloch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical_blowup;
    }
    return exit_ok;
}
