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

#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qdbloch/fdtd.hpp"
#include "qdbloch/scenario.hpp"

namespace qdbloch {

/// Per-run diagnostics and extremal values. Invariant violations are
/// reported, not thrown: ablation runs are expected to leave the physical
/// state space and must still complete.
struct RunReport {
    std::string scenario_name;
    int n_steps = 0;
    double dt = 0.0;
    double trace0 = 1.0;

    // Population extrema at the medium probe cell.
    double max_rho_c11 = 0.0;
    double final_rho_c11 = 0.0;
    double max_rho_v11 = 0.0;  // deepest valence level
    std::vector<double> final_populations;  // conduction then valence

    // Structure diagnostics over all medium cells and steps.
    double max_trace_drift_rel = 0.0;
    double max_herm_defect_rel = 0.0;
    double min_eigenvalue_seen = 0.0;
    double final_min_eigenvalue = 0.0;
    double worst_population_excess = 0.0;
    double worst_coherence_excess = 0.0;

    // Pulse bookkeeping, radians.
    double injected_area = 0.0;
    double transmitted_area = 0.0;

    double wall_seconds = 0.0;
    std::vector<std::string> warnings;

    bool positivity_ok(double tol = tol_psd_rel) const { return min_eigenvalue_seen >= -tol * trace0; }
};

namespace detail {

inline std::string fmt(double v) { return format_double(v); }

struct ProbeRow {
    double t = 0.0;
    double E_probe = 0.0;
    std::vector<double> populations;
    std::vector<Complex> coherences;  // fixed layout, see coherence_labels
    double trace = 0.0;
    double min_eig = 0.0;
};

// Upper-triangle coherence layout used in probes.csv: conduction block,
// inter-band block, valence block.
inline std::vector<std::string> coherence_labels(const LevelLayout& lay) {
    std::vector<std::string> labels;
    for (int i = 0; i < lay.n_c; ++i)
        for (int j = i + 1; j < lay.n_c; ++j)
            labels.push_back("rho_c_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    for (int i = 0; i < lay.n_c; ++i)
        for (int j = 0; j < lay.n_v; ++j)
            labels.push_back("rho_cv_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    for (int i = 0; i < lay.n_v; ++i)
        for (int j = i + 1; j < lay.n_v; ++j)
            labels.push_back("rho_v_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    return labels;
}

inline std::vector<Complex> collect_coherences(const DensityMatrix& rho) {
    const LevelLayout& lay = rho.layout;
    std::vector<Complex> out;
    for (int i = 0; i < lay.n_c; ++i)
        for (int j = i + 1; j < lay.n_c; ++j) out.push_back(rho.mat(i, j));
    for (int i = 0; i < lay.n_c; ++i)
        for (int j = 0; j < lay.n_v; ++j) out.push_back(rho.mat(i, lay.v(j)));
    for (int i = 0; i < lay.n_v; ++i)
        for (int j = i + 1; j < lay.n_v; ++j) out.push_back(rho.mat(lay.v(i), lay.v(j)));
    return out;
}

inline void write_probes_csv(const std::string& path, const LevelLayout& lay,
                             const std::vector<ProbeRow>& rows) {
    std::ofstream f(path);
    f << "t,E_probe";
    for (int i = 0; i < lay.n_c; ++i) f << ",pop_c_" << i + 1;
    for (int i = 0; i < lay.n_v; ++i) f << ",pop_v_" << i + 1;
    for (const auto& label : coherence_labels(lay)) f << ",re_" << label << ",im_" << label;
    f << ",trace,min_eig\n";
    for (const auto& r : rows) {
        f << fmt(r.t) << ',' << fmt(r.E_probe);
        for (double p : r.populations) f << ',' << fmt(p);
        for (const auto& c : r.coherences) f << ',' << fmt(c.real()) << ',' << fmt(c.imag());
        f << ',' << fmt(r.trace) << ',' << fmt(r.min_eig) << "\n";
    }
}

inline void write_field_snapshot(const std::string& path, const FieldGrid& g) {
    std::ofstream f(path);
    f << "z,E,H,P\n";
    for (int i = 0; i < g.spec.nz; ++i) {
        const double h = i < g.spec.nz - 1 ? g.H(i) : 0.0;
        f << fmt(i * g.spec.dz) << ',' << fmt(g.E(i)) << ',' << fmt(h) << ',' << fmt(g.P(i)) << "\n";
    }
}

inline void write_summary(const std::string& path, const RunReport& r) {
    std::ofstream f(path);
    f << "scenario = " << r.scenario_name << "\n";
    f << "n_steps = " << r.n_steps << "\n";
    f << "dt = " << fmt(r.dt) << "\n";
    f << "trace0 = " << fmt(r.trace0) << "\n";
    f << "max_rho_c11 = " << fmt(r.max_rho_c11) << "\n";
    f << "final_rho_c11 = " << fmt(r.final_rho_c11) << "\n";
    f << "max_rho_v11 = " << fmt(r.max_rho_v11) << "\n";
    for (std::size_t i = 0; i < r.final_populations.size(); ++i) {
        f << "final_population_" << i + 1 << " = " << fmt(r.final_populations[i]) << "\n";
    }
    f << "max_trace_drift_rel = " << fmt(r.max_trace_drift_rel) << "\n";
    f << "max_herm_defect_rel = " << fmt(r.max_herm_defect_rel) << "\n";
    f << "min_eigenvalue = " << fmt(r.min_eigenvalue_seen) << "\n";
    f << "final_min_eigenvalue = " << fmt(r.final_min_eigenvalue) << "\n";
    f << "worst_population_excess = " << fmt(r.worst_population_excess) << "\n";
    f << "worst_coherence_excess = " << fmt(r.worst_coherence_excess) << "\n";
    f << "injected_area_rad = " << fmt(r.injected_area) << "\n";
    f << "transmitted_area_rad = " << fmt(r.transmitted_area) << "\n";
    f << "positivity_ok = " << (r.positivity_ok() ? "yes" : "no") << "\n";
    f << "wall_seconds = " << fmt(r.wall_seconds) << "\n";
}

inline void write_manifest(const std::string& path, const Scenario& s, const PulseSpec& pulse,
                           double dipole_ref) {
    std::ofstream f(path);
    f << "# resolved run configuration\n";
    f << serialize_scenario(s);
    f << "# derived\n";
    f << "# dt_s = " << fmt(s.dt()) << "\n";
    f << "# n_steps = " << s.n_steps() << "\n";
    f << "# pulse_amplitude_Vm = " << fmt(pulse.E0) << "\n";
    f << "# pulse_dipole_ref_Cm = " << fmt(dipole_ref) << "\n";
    f << "# compiler = " << __VERSION__ << "\n";
}

}  // namespace detail

/// Executes the coupled Maxwell-Bloch time loop for one scenario.
/// Deterministic for a fixed (scenario, seed). When out_dir is non-empty,
/// writes manifest, probes.csv, fields_NNNN.csv snapshots and summary there.
inline RunReport run_scenario(const Scenario& s, const std::string& out_dir = "") {
    const auto t_start = std::chrono::steady_clock::now();

    RunReport report;
    report.scenario_name = s.name;
    report.warnings = validate_scenario(s);
    report.dt = s.dt();
    report.n_steps = s.n_steps();

    const QuantumDotModel model = build_model(s);
    const DensityMatrix rho0 = build_initial_state(s);
    const PulseSpec pulse = build_pulse(s, model.dipoles);
    const double dipole_ref =
        (s.pulse_k > 0.0 || s.pulse_e0 > 0.0) ? reference_dipole(s, model.dipoles) : 0.0;
    report.trace0 = rho0.trace();
    if (pulse.E0 > 0.0 && pulse.k > 0.0) {
        report.injected_area = pulse_area(pulse, dipole_ref);
    }

    FieldGrid grid(build_grid(s), rho0);
    SolverConfig solver(report.dt);
    solver.mode = s.mode;

    const bool source_active = pulse.E0 > 0.0;
    const double t_center = s.pulse_center();
    const int medium_probe =
        s.medium_probe_cell >= 0 ? s.medium_probe_cell : (s.medium_begin + s.medium_end) / 2;
    const bool has_medium = s.medium_end > s.medium_begin;
    const LevelLayout layout(s.n_c, s.n_v);

    std::vector<detail::ProbeRow> rows;
    auto record_row = [&]() {
        detail::ProbeRow row;
        row.t = grid.t;
        row.E_probe = grid.E(s.probe_cell);
        if (has_medium) {
            const DensityMatrix& rho = grid.cell(medium_probe);
            for (int i = 0; i < layout.d(); ++i) row.populations.push_back(rho.mat(i, i).real());
            row.coherences = detail::collect_coherences(rho);
            row.trace = rho.trace();
            row.min_eig = min_eigenvalue(rho, 1e-6);
        }
        rows.push_back(std::move(row));
    };

    std::filesystem::path dir(out_dir);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(dir);
        detail::write_manifest((dir / "manifest").string(), s, pulse, dipole_ref);
    }

    // Initial diagnostics.
    if (has_medium) {
        report.min_eigenvalue_seen = min_eigenvalue(rho0, 1e-6);
        report.max_rho_c11 = rho0.mat(0, 0).real();
        report.final_rho_c11 = report.max_rho_c11;
        report.max_rho_v11 = rho0.mat(layout.v(0), layout.v(0)).real();
    }
    record_row();

    std::vector<double> probe_series;
    probe_series.reserve(static_cast<std::size_t>(report.n_steps));
    int snapshot_index = 0;

    for (int step = 0; step < report.n_steps; ++step) {
        yee_step(grid, model, solver, s.axis);
        if (source_active) inject_pulse(grid, pulse, s.source_cell, t_center);

        probe_series.push_back(grid.E(s.probe_cell));

        if (has_medium) {
            const DensityMatrix& probe_rho = grid.cell(medium_probe);
            const double c11 = probe_rho.mat(0, 0).real();
            report.max_rho_c11 = std::max(report.max_rho_c11, c11);
            report.max_rho_v11 =
                std::max(report.max_rho_v11, probe_rho.mat(layout.v(0), layout.v(0)).real());

            for (const auto& cell : grid.cells) {
                const double drift = std::abs(cell.trace() - report.trace0) / report.trace0;
                report.max_trace_drift_rel = std::max(report.max_trace_drift_rel, drift);
                const double scale = std::max(max_abs_entry(cell.mat), 1e-300);
                report.max_herm_defect_rel =
                    std::max(report.max_herm_defect_rel, hermiticity_defect(cell) / scale);
            }
            if ((step + 1) % s.eig_stride == 0) {
                for (const auto& cell : grid.cells) {
                    report.min_eigenvalue_seen =
                        std::min(report.min_eigenvalue_seen, min_eigenvalue(cell, 1e-6));
                    const BoundsReport b = check_bounds(cell, report.trace0, 0.0);
                    report.worst_population_excess =
                        std::max(report.worst_population_excess, b.worst_population_excess);
                    report.worst_coherence_excess =
                        std::max(report.worst_coherence_excess, b.worst_coherence_excess);
                }
            }
        }

        if ((step + 1) % s.record_stride == 0) record_row();
        if (!out_dir.empty() && s.snapshot_stride > 0 && (step + 1) % s.snapshot_stride == 0) {
            char name[32];
            std::snprintf(name, sizeof(name), "fields_%04d.csv", snapshot_index++);
            detail::write_field_snapshot((dir / name).string(), grid);
        }
    }

    if (has_medium) {
        const DensityMatrix& probe_rho = grid.cell(medium_probe);
        report.final_rho_c11 = probe_rho.mat(0, 0).real();
        for (int i = 0; i < layout.d(); ++i) {
            report.final_populations.push_back(probe_rho.mat(i, i).real());
        }
        report.final_min_eigenvalue = min_eigenvalue(grid.cells.front(), 1e-6);
        for (const auto& cell : grid.cells) {
            report.final_min_eigenvalue =
                std::min(report.final_min_eigenvalue, min_eigenvalue(cell, 1e-6));
        }
    }
    // Transmitted envelope area: 2 (M/hbar) |int E e^{-i w0 t} dt| over a
    // +-10 tau window around the pulse's energy centroid at the probe. The
    // window matches the injected-area definition and keeps the persistent
    // free-induction ringing of the undamped medium out of the bookkeeping.
    if (source_active && dipole_ref > 0.0) {
        double weight = 0.0, centroid = 0.0;
        for (int n = 0; n < report.n_steps; ++n) {
            const double w = probe_series[static_cast<std::size_t>(n)] * probe_series[static_cast<std::size_t>(n)];
            weight += w;
            centroid += w * (n + 1) * report.dt;
        }
        if (weight > 0.0) {
            centroid /= weight;
            Complex demod(0.0, 0.0);
            for (int n = 0; n < report.n_steps; ++n) {
                const double t = (n + 1) * report.dt;
                if (std::abs(t - centroid) > pulse_window_half_width * pulse.tau) continue;
                demod += probe_series[static_cast<std::size_t>(n)] *
                         std::exp(Complex(0.0, -pulse.omega0 * t)) * report.dt;
            }
            report.transmitted_area = 2.0 * dipole_ref / hbar * std::abs(demod);
        }
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    if (!out_dir.empty()) {
        detail::write_probes_csv((dir / "probes.csv").string(), layout, rows);
        detail::write_summary((dir / "summary").string(), report);
    }
    return report;
}

// --- Parameter sweeps --------------------------------------------------------

struct SweepResult {
    std::string label;
    Scenario scenario;
    RunReport report;
};

/// Applies one sweep value to a copy of the base scenario. Supported
/// parameters: R0 (tensor scale, J), k (pulse area multiple), mode
/// (full|vanishing_intraband), valence_splitting (gap between the top and the
/// deepest valence level in units of hbar*omega0).
inline Scenario apply_sweep_value(const Scenario& base, const std::string& parameter,
                                  const std::string& value) {
    Scenario s = base;
    if (parameter == "R0") {
        s.coulomb_r0 = detail::to_double("R0", value);
    } else if (parameter == "k") {
        s.pulse_k = detail::to_double("k", value);
    } else if (parameter == "mode") {
        if (value == "full") s.mode = CoulombMode::full;
        else if (value == "vanishing_intraband") s.mode = CoulombMode::vanishing_intraband;
        else throw ConfigError("sweep: mode value must be full or vanishing_intraband");
    } else if (parameter == "valence_splitting") {
        if (s.n_v < 2) throw ConfigError("sweep: valence_splitting needs at least two valence levels");
        if (!(s.omega0 > 0.0)) throw ConfigError("sweep: valence_splitting needs omega0 > 0");
        const double split = detail::to_double("valence_splitting", value);
        s.eps_v[0] = s.eps_v[s.n_v - 1] - split * hbar * s.omega0;
    } else {
        throw ConfigError("sweep: unknown parameter '" + parameter +
                          "' (expected R0, k, mode or valence_splitting)");
    }
    s.name = base.name + "_" + parameter + "=" + value;
    return s;
}

/// Independent runs over the value list, shared seed. Reports come back in
/// input order; with a non-empty out_dir each run writes into its own
/// subdirectory.
inline std::vector<SweepResult> sweep(const Scenario& base, const std::string& parameter,
                                      const std::vector<std::string>& values,
                                      const std::string& out_dir = "") {
    std::vector<SweepResult> results;
    for (const auto& value : values) {
        SweepResult r;
        r.scenario = apply_sweep_value(base, parameter, value);
        r.label = parameter + "=" + value;
        std::string run_dir;
        if (!out_dir.empty()) {
            run_dir = (std::filesystem::path(out_dir) / (parameter + "_" + value)).string();
        }
        r.report = run_scenario(r.scenario, run_dir);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace qdbloch
