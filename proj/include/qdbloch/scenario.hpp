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

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qdbloch/bloch.hpp"
#include "qdbloch/constants.hpp"
#include "qdbloch/coulomb.hpp"
#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/fdtd.hpp"
#include "qdbloch/hamiltonian.hpp"
#include "qdbloch/pulse.hpp"

namespace qdbloch {

/// One sparse matrix entry of the run configuration (dipole or initial
/// coherence). Indices are 1-based as in the config file.
struct MatrixEntry {
    std::string block;  // "c", "v" or "cv"
    int i = 0;
    int j = 0;
    Complex value;
};

/// Complete description of one experiment run. Every field mirrors one
/// scenario-file key; parse/serialize round-trip the full set.
struct Scenario {
    std::string name = "custom";

    // Levels and energies (J).
    int n_c = 1;
    int n_v = 1;
    std::vector<double> eps_c{0.0};
    std::vector<double> eps_v{0.0};

    // Dipole moments (C·m) on the polarization axis.
    std::vector<MatrixEntry> dipoles;
    int axis = 0;  // 0=x, 1=y, 2=z

    // Coulomb interaction.
    double coulomb_r0 = 0.0;  // J
    std::uint64_t seed = 42;
    CoulombMode mode = CoulombMode::full;
    std::string coulomb_file;  // optional; overrides the synthetic tensor

    // Pulse. k = 0 disables the source; pulse_e0 > 0 overrides the derived
    // amplitude.
    double pulse_k = 0.0;
    double pulse_tau = 50e-15;       // s
    double omega0 = 0.0;             // rad/s
    double pulse_e0 = 0.0;           // V/m, explicit amplitude
    double pulse_dipole_ref = 0.0;   // C·m; 0 = derive from the largest |M_cv| entry
    double pulse_delay = -1.0;       // s; < 0 = default 10 tau

    // Grid.
    int nz = 0;
    double dz = 0.0;       // m
    double courant = 0.95;
    int medium_begin = 0;
    int medium_end = 0;
    double N_b = 0.0;      // 1/m^3
    std::string boundary = "mur";  // mur | reflecting
    int source_cell = 0;
    int probe_cell = 0;         // transmission probe (field time series)
    int medium_probe_cell = -1;  // population probe; -1 = mid-medium

    double t_end = 0.0;  // s

    // Recording strides (steps).
    int record_stride = 10;
    int snapshot_stride = 0;  // 0 = no field snapshots
    int eig_stride = 1;

    // Initial state.
    std::vector<double> init_pop_c;  // sized n_c when parsed; defaults zero
    std::vector<double> init_pop_v;
    std::vector<MatrixEntry> init_coherences;

    double dt() const {
        const double c0 = 1.0 / std::sqrt(vacuum_permittivity * vacuum_permeability);
        return courant * dz / c0;
    }

    int n_steps() const { return static_cast<int>(std::ceil(t_end / dt())); }

    double pulse_center() const { return pulse_delay >= 0.0 ? pulse_delay : 10.0 * pulse_tau; }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("scenario: key '" + key + "' expects a number, got '" + value + "'");
    }
}

inline int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ConfigError("scenario: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

inline std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("scenario: key '" + key + "' expects an unsigned integer, got '" + value + "'");
    }
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Splits keys like "dipole_cv_1_2" / "dipole_cv_1_2_im" into block, indices
// and the re/im flag. Returns false when the key does not match the family.
inline bool parse_entry_key(const std::string& key, const std::string& prefix, std::string& block,
                            int& i, int& j, bool& imag) {
    if (key.rfind(prefix + "_", 0) != 0) return false;
    std::string rest = key.substr(prefix.size() + 1);
    imag = false;
    if (rest.size() > 3 && rest.compare(rest.size() - 3, 3, "_im") == 0) {
        imag = true;
        rest = rest.substr(0, rest.size() - 3);
    }
    std::istringstream parts(rest);
    std::string token;
    std::vector<std::string> tokens;
    while (std::getline(parts, token, '_')) tokens.push_back(token);
    if (tokens.size() != 3) return false;
    if (tokens[0] != "c" && tokens[0] != "v" && tokens[0] != "cv") return false;
    block = tokens[0];
    try {
        i = std::stoi(tokens[1]);
        j = std::stoi(tokens[2]);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

inline void set_entry(std::vector<MatrixEntry>& entries, const std::string& block, int i, int j,
                      bool imag, double value) {
    for (auto& e : entries) {
        if (e.block == block && e.i == i && e.j == j) {
            if (imag) {
                e.value = Complex(e.value.real(), value);
            } else {
                e.value = Complex(value, e.value.imag());
            }
            return;
        }
    }
    entries.push_back({block, i, j, imag ? Complex(0.0, value) : Complex(value, 0.0)});
}

}  // namespace detail

/// Parses "key = value" text. '#' starts a comment; unknown keys are errors.
inline Scenario parse_scenario(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("scenario: line " + std::to_string(lineno) + " is not 'key = value'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("scenario: empty key or value on line " + std::to_string(lineno));
        }
        if (kv.count(key)) throw ConfigError("scenario: duplicate key '" + key + "'");
        kv[key] = value;
    }

    Scenario s;
    auto take = [&](const char* key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return "";
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("name"); !v.empty()) s.name = v;
    if (auto v = take("n_c"); !v.empty()) s.n_c = detail::to_int("n_c", v);
    if (auto v = take("n_v"); !v.empty()) s.n_v = detail::to_int("n_v", v);
    if (s.n_c < 1 || s.n_v < 1) throw ConfigError("scenario: n_c and n_v must be at least 1");

    s.eps_c.assign(s.n_c, 0.0);
    s.eps_v.assign(s.n_v, 0.0);
    s.init_pop_c.assign(s.n_c, 0.0);
    s.init_pop_v.assign(s.n_v, 0.0);
    for (int i = 1; i <= s.n_c; ++i) {
        if (auto v = take(("eps_c_" + std::to_string(i)).c_str()); !v.empty())
            s.eps_c[i - 1] = detail::to_double("eps_c", v);
        if (auto v = take(("init_pop_c_" + std::to_string(i)).c_str()); !v.empty())
            s.init_pop_c[i - 1] = detail::to_double("init_pop_c", v);
    }
    for (int i = 1; i <= s.n_v; ++i) {
        if (auto v = take(("eps_v_" + std::to_string(i)).c_str()); !v.empty())
            s.eps_v[i - 1] = detail::to_double("eps_v", v);
        if (auto v = take(("init_pop_v_" + std::to_string(i)).c_str()); !v.empty())
            s.init_pop_v[i - 1] = detail::to_double("init_pop_v", v);
    }

    if (auto v = take("axis"); !v.empty()) {
        if (v == "x") s.axis = 0;
        else if (v == "y") s.axis = 1;
        else if (v == "z") s.axis = 2;
        else throw ConfigError("scenario: axis must be x, y or z");
    }
    if (auto v = take("coulomb_r0"); !v.empty()) s.coulomb_r0 = detail::to_double("coulomb_r0", v);
    if (auto v = take("seed"); !v.empty()) s.seed = detail::to_u64("seed", v);
    if (auto v = take("mode"); !v.empty()) {
        if (v == "full") s.mode = CoulombMode::full;
        else if (v == "vanishing_intraband") s.mode = CoulombMode::vanishing_intraband;
        else throw ConfigError("scenario: mode must be 'full' or 'vanishing_intraband'");
    }
    if (auto v = take("coulomb_file"); !v.empty()) s.coulomb_file = v;

    if (auto v = take("pulse_k"); !v.empty()) s.pulse_k = detail::to_double("pulse_k", v);
    if (auto v = take("pulse_tau"); !v.empty()) s.pulse_tau = detail::to_double("pulse_tau", v);
    if (auto v = take("omega0"); !v.empty()) s.omega0 = detail::to_double("omega0", v);
    if (auto v = take("pulse_e0"); !v.empty()) s.pulse_e0 = detail::to_double("pulse_e0", v);
    if (auto v = take("pulse_dipole_ref"); !v.empty())
        s.pulse_dipole_ref = detail::to_double("pulse_dipole_ref", v);
    if (auto v = take("pulse_delay"); !v.empty()) s.pulse_delay = detail::to_double("pulse_delay", v);

    if (auto v = take("nz"); !v.empty()) s.nz = detail::to_int("nz", v);
    if (auto v = take("dz"); !v.empty()) s.dz = detail::to_double("dz", v);
    if (auto v = take("courant"); !v.empty()) s.courant = detail::to_double("courant", v);
    if (auto v = take("medium_begin"); !v.empty()) s.medium_begin = detail::to_int("medium_begin", v);
    if (auto v = take("medium_end"); !v.empty()) s.medium_end = detail::to_int("medium_end", v);
    if (auto v = take("N_b"); !v.empty()) s.N_b = detail::to_double("N_b", v);
    if (auto v = take("boundary"); !v.empty()) {
        if (v != "mur" && v != "reflecting") throw ConfigError("scenario: boundary must be mur or reflecting");
        s.boundary = v;
    }
    if (auto v = take("source_cell"); !v.empty()) s.source_cell = detail::to_int("source_cell", v);
    if (auto v = take("probe_cell"); !v.empty()) s.probe_cell = detail::to_int("probe_cell", v);
    if (auto v = take("medium_probe_cell"); !v.empty())
        s.medium_probe_cell = detail::to_int("medium_probe_cell", v);
    if (auto v = take("t_end"); !v.empty()) s.t_end = detail::to_double("t_end", v);
    if (auto v = take("record_stride"); !v.empty()) s.record_stride = detail::to_int("record_stride", v);
    if (auto v = take("snapshot_stride"); !v.empty()) s.snapshot_stride = detail::to_int("snapshot_stride", v);
    if (auto v = take("eig_stride"); !v.empty()) s.eig_stride = detail::to_int("eig_stride", v);

    // Entry families: dipole_* and init_coh_*.
    for (auto it = kv.begin(); it != kv.end();) {
        std::string block;
        int i = 0, j = 0;
        bool imag = false;
        if (detail::parse_entry_key(it->first, "dipole", block, i, j, imag)) {
            detail::set_entry(s.dipoles, block, i, j, imag, detail::to_double(it->first, it->second));
            it = kv.erase(it);
        } else if (detail::parse_entry_key(it->first, "init_coh", block, i, j, imag)) {
            detail::set_entry(s.init_coherences, block, i, j, imag,
                              detail::to_double(it->first, it->second));
            it = kv.erase(it);
        } else {
            ++it;
        }
    }

    if (!kv.empty()) {
        throw ConfigError("scenario: unknown key '" + kv.begin()->first + "'");
    }
    return s;
}

inline Scenario parse_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open scenario file: " + path);
    return parse_scenario(f);
}

inline Scenario parse_scenario_string(const std::string& text) {
    std::istringstream is(text);
    return parse_scenario(is);
}

/// Full resolved key set; parse(serialize(s)) reproduces s.
inline std::string serialize_scenario(const Scenario& s) {
    std::ostringstream os;
    auto num = detail::format_double;
    os << "name = " << s.name << "\n";
    os << "n_c = " << s.n_c << "\n";
    os << "n_v = " << s.n_v << "\n";
    for (int i = 1; i <= s.n_c; ++i) os << "eps_c_" << i << " = " << num(s.eps_c[i - 1]) << "\n";
    for (int i = 1; i <= s.n_v; ++i) os << "eps_v_" << i << " = " << num(s.eps_v[i - 1]) << "\n";
    for (const auto& e : s.dipoles) {
        os << "dipole_" << e.block << "_" << e.i << "_" << e.j << " = " << num(e.value.real()) << "\n";
        if (e.value.imag() != 0.0)
            os << "dipole_" << e.block << "_" << e.i << "_" << e.j << "_im = " << num(e.value.imag())
               << "\n";
    }
    os << "axis = " << (s.axis == 0 ? "x" : s.axis == 1 ? "y" : "z") << "\n";
    os << "coulomb_r0 = " << num(s.coulomb_r0) << "\n";
    os << "seed = " << s.seed << "\n";
    os << "mode = " << (s.mode == CoulombMode::full ? "full" : "vanishing_intraband") << "\n";
    if (!s.coulomb_file.empty()) os << "coulomb_file = " << s.coulomb_file << "\n";
    os << "pulse_k = " << num(s.pulse_k) << "\n";
    os << "pulse_tau = " << num(s.pulse_tau) << "\n";
    os << "omega0 = " << num(s.omega0) << "\n";
    if (s.pulse_e0 > 0.0) os << "pulse_e0 = " << num(s.pulse_e0) << "\n";
    if (s.pulse_dipole_ref > 0.0) os << "pulse_dipole_ref = " << num(s.pulse_dipole_ref) << "\n";
    if (s.pulse_delay >= 0.0) os << "pulse_delay = " << num(s.pulse_delay) << "\n";
    os << "nz = " << s.nz << "\n";
    os << "dz = " << num(s.dz) << "\n";
    os << "courant = " << num(s.courant) << "\n";
    os << "medium_begin = " << s.medium_begin << "\n";
    os << "medium_end = " << s.medium_end << "\n";
    os << "N_b = " << num(s.N_b) << "\n";
    os << "boundary = " << s.boundary << "\n";
    os << "source_cell = " << s.source_cell << "\n";
    os << "probe_cell = " << s.probe_cell << "\n";
    os << "medium_probe_cell = " << s.medium_probe_cell << "\n";
    os << "t_end = " << num(s.t_end) << "\n";
    os << "record_stride = " << s.record_stride << "\n";
    os << "snapshot_stride = " << s.snapshot_stride << "\n";
    os << "eig_stride = " << s.eig_stride << "\n";
    for (int i = 1; i <= s.n_c; ++i)
        if (s.init_pop_c[i - 1] != 0.0) os << "init_pop_c_" << i << " = " << num(s.init_pop_c[i - 1]) << "\n";
    for (int i = 1; i <= s.n_v; ++i)
        if (s.init_pop_v[i - 1] != 0.0) os << "init_pop_v_" << i << " = " << num(s.init_pop_v[i - 1]) << "\n";
    for (const auto& e : s.init_coherences) {
        os << "init_coh_" << e.block << "_" << e.i << "_" << e.j << " = " << num(e.value.real()) << "\n";
        if (e.value.imag() != 0.0)
            os << "init_coh_" << e.block << "_" << e.i << "_" << e.j << "_im = " << num(e.value.imag())
               << "\n";
    }
    return os.str();
}

/// Applies one "key=value" override on top of an existing scenario by
/// re-parsing its serialized form with the key replaced.
inline Scenario apply_override(const Scenario& s, const std::string& key_eq_value) {
    const auto eq = key_eq_value.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override must be key=value, got '" + key_eq_value + "'");
    }
    const std::string key = detail::trim(key_eq_value.substr(0, eq));
    const std::string value = detail::trim(key_eq_value.substr(eq + 1));
    std::istringstream in(serialize_scenario(s));
    std::ostringstream out;
    std::string line;
    bool replaced = false;
    while (std::getline(in, line)) {
        if (line.rfind(key + " =", 0) == 0) {
            out << key << " = " << value << "\n";
            replaced = true;
        } else {
            out << line << "\n";
        }
    }
    if (!replaced) out << key << " = " << value << "\n";
    return parse_scenario_string(out.str());
}

// --- Model construction ------------------------------------------------------

inline DipoleMatrices build_dipoles(const Scenario& s) {
    LevelLayout layout(s.n_c, s.n_v);
    DipoleMatrices M(layout);
    for (const auto& e : s.dipoles) {
        const int i = e.i - 1, j = e.j - 1;
        if (e.block == "cv") {
            if (i < 0 || i >= s.n_c || j < 0 || j >= s.n_v)
                throw ConfigError("scenario: dipole_cv index out of range");
            M.M_cv[s.axis](i, j) = e.value;
        } else if (e.block == "c") {
            if (i < 0 || i >= s.n_c || j < 0 || j >= s.n_c || i == j)
                throw ConfigError("scenario: dipole_c index out of range or on the diagonal");
            M.M_c[s.axis](i, j) = e.value;
            M.M_c[s.axis](j, i) = std::conj(e.value);
        } else {
            if (i < 0 || i >= s.n_v || j < 0 || j >= s.n_v || i == j)
                throw ConfigError("scenario: dipole_v index out of range or on the diagonal");
            M.M_v[s.axis](i, j) = e.value;
            M.M_v[s.axis](j, i) = std::conj(e.value);
        }
    }
    return M;
}

inline QuantumDotModel build_model(const Scenario& s) {
    QuantumDotModel model;
    model.layout = LevelLayout(s.n_c, s.n_v);
    model.energies = FreeEnergies(model.layout);
    for (int i = 0; i < s.n_c; ++i) model.energies.eps_c(i) = s.eps_c[i];
    for (int i = 0; i < s.n_v; ++i) model.energies.eps_v(i) = s.eps_v[i];
    model.dipoles = build_dipoles(s);
    model.coulomb = s.coulomb_file.empty() ? make_synthetic_tensor(model.layout, s.coulomb_r0, s.seed)
                                           : load_coulomb_tensor(s.coulomb_file, model.layout);
    return model;
}

inline DensityMatrix build_initial_state(const Scenario& s) {
    LevelLayout layout(s.n_c, s.n_v);
    DensityMatrix rho(layout);
    for (int i = 0; i < s.n_c; ++i) rho.mat(i, i) = s.init_pop_c[i];
    for (int i = 0; i < s.n_v; ++i) rho.mat(layout.v(i), layout.v(i)) = s.init_pop_v[i];
    for (const auto& e : s.init_coherences) {
        int row = -1, col = -1;
        if (e.block == "c") {
            if (e.i < 1 || e.i > s.n_c || e.j < 1 || e.j > s.n_c || e.i == e.j)
                throw ConfigError("scenario: init_coh_c index invalid");
            row = e.i - 1;
            col = e.j - 1;
        } else if (e.block == "v") {
            if (e.i < 1 || e.i > s.n_v || e.j < 1 || e.j > s.n_v || e.i == e.j)
                throw ConfigError("scenario: init_coh_v index invalid");
            row = layout.v(e.i - 1);
            col = layout.v(e.j - 1);
        } else {
            if (e.i < 1 || e.i > s.n_c || e.j < 1 || e.j > s.n_v)
                throw ConfigError("scenario: init_coh_cv index invalid");
            row = e.i - 1;
            col = layout.v(e.j - 1);
        }
        rho.mat(row, col) = e.value;
        rho.mat(col, row) = std::conj(e.value);
    }
    return rho;
}

inline double reference_dipole(const Scenario& s, const DipoleMatrices& M) {
    if (s.pulse_dipole_ref > 0.0) return s.pulse_dipole_ref;
    const double m = max_abs_entry(M.M_cv[s.axis]);
    if (m <= 0.0) throw ConfigError("scenario: cannot derive pulse amplitude, M_cv is zero");
    return m;
}

inline PulseSpec build_pulse(const Scenario& s, const DipoleMatrices& M) {
    PulseSpec p;
    p.tau = s.pulse_tau;
    p.omega0 = s.omega0;
    if (s.pulse_e0 > 0.0) {
        p.E0 = s.pulse_e0;
        p.k = 0.0;
    } else if (s.pulse_k > 0.0) {
        p = make_kpi_pulse(s.pulse_k, reference_dipole(s, M), s.pulse_tau, s.omega0);
    }
    return p;
}

inline GridSpec build_grid(const Scenario& s) {
    GridSpec g(s.nz, s.dz, s.dt());
    g.medium_begin = s.medium_begin;
    g.medium_end = s.medium_end;
    g.N_b = s.N_b;
    g.boundary = s.boundary == "reflecting" ? BoundaryKind::reflecting : BoundaryKind::mur;
    g.validate();
    return g;
}

/// Dry-run check of the full configuration: shapes, CFL, probes, initial
/// state physicality. Throws ConfigError/CflViolation/ShapeMismatch on hard
/// errors; returns human-readable warnings otherwise.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> warnings;
    QuantumDotModel model = build_model(s);
    for (auto& w : model.energies.warnings()) warnings.push_back(w);
    for (auto& w : model.dipoles.validate()) warnings.push_back(w);

    const DensityMatrix rho0 = build_initial_state(s);
    const double trace0 = rho0.trace();
    if (!(trace0 > 0.0)) throw ConfigError("scenario: initial state must have positive trace");
    if (min_eigenvalue(rho0) < -tol_psd_rel * trace0) {
        throw ConfigError("scenario: initial state is not positive semi-definite");
    }

    build_grid(s);
    if (s.source_cell < 0 || s.source_cell >= s.nz || s.probe_cell < 0 || s.probe_cell >= s.nz) {
        throw ConfigError("scenario: source/probe cells out of range");
    }
    if (s.source_cell >= s.medium_begin && s.source_cell < s.medium_end) {
        throw ConfigError("scenario: source cell must be in the vacuum region");
    }
    const int mp = s.medium_probe_cell >= 0 ? s.medium_probe_cell : (s.medium_begin + s.medium_end) / 2;
    if (s.medium_begin < s.medium_end && (mp < s.medium_begin || mp >= s.medium_end)) {
        throw ConfigError("scenario: medium probe cell outside the medium");
    }
    if (!(s.t_end > 0.0)) throw ConfigError("scenario: t_end must be positive");
    if (s.record_stride < 1 || s.eig_stride < 1 || s.snapshot_stride < 0) {
        throw ConfigError("scenario: strides must be positive (snapshot stride may be 0)");
    }
    if ((s.pulse_k > 0.0 || s.pulse_e0 > 0.0) && !(s.omega0 > 0.0)) {
        throw ConfigError("scenario: a pulse needs omega0 > 0");
    }
    if (s.coulomb_r0 < 0.0) throw ConfigError("scenario: coulomb_r0 must be non-negative");
    return warnings;
}

// --- Built-in registry -------------------------------------------------------

namespace registry_detail {

// Shared experimental defaults: 1.5 um carrier, 50 fs sech pulse, 2 pi area.
inline constexpr double default_omega0 = 2.0 * std::numbers::pi * 2.0e14;  // rad/s
inline constexpr double default_tau = 50e-15;                              // s
inline constexpr double default_dipole = 1.0e-29;                          // C·m
inline constexpr double default_N_b = 5.0e23;                              // 1/m^3
inline constexpr std::uint64_t benchmark_seed = 42;

inline Scenario propagation_base() {
    Scenario s;
    s.seed = benchmark_seed;
    s.omega0 = default_omega0;
    s.pulse_tau = default_tau;
    s.pulse_k = 2.0;
    s.nz = 1400;
    s.dz = 75e-9;
    s.courant = 0.95;
    s.medium_begin = 500;
    s.medium_end = 800;
    s.N_b = default_N_b;
    s.source_cell = 60;
    s.probe_cell = 1300;
    s.medium_probe_cell = 650;
    s.t_end = 1.8e-12;
    s.record_stride = 10;
    s.eig_stride = 1;
    return s;
}

inline Scenario two_level() {
    Scenario s = propagation_base();
    s.name = "sit-2level";
    s.n_c = 1;
    s.n_v = 1;
    s.eps_c = {hbar * default_omega0};
    s.eps_v = {0.0};
    s.init_pop_c = {0.0};
    s.init_pop_v = {1.0};
    s.dipoles.push_back({"cv", 1, 1, Complex(default_dipole, 0.0)});
    return s;
}

// Three levels: one conduction level resonant with the upper valence level
// (the SIT pair), plus a deep valence level `splitting` below it. The field
// also couples the two valence levels.
inline Scenario three_level(double splitting_over_omega0) {
    Scenario s = propagation_base();
    s.n_c = 1;
    s.n_v = 2;
    s.eps_c = {hbar * default_omega0};
    s.eps_v = {-splitting_over_omega0 * hbar * default_omega0, 0.0};
    s.init_pop_c = {0.0};
    s.init_pop_v = {0.0, 1.0};
    s.dipoles.push_back({"cv", 1, 2, Complex(default_dipole, 0.0)});
    s.dipoles.push_back({"v", 1, 2, Complex(default_dipole, 0.0)});
    s.pulse_dipole_ref = default_dipole;
    return s;
}

}  // namespace registry_detail

/// One scenario per experiment in the study: two-level transparency, the
/// resonant/detuned three-level pair, the Coulomb-strength pair, the two
/// intra-band-ablation runs, and the field-free constancy check.
inline std::map<std::string, Scenario> scenario_registry() {
    using namespace registry_detail;
    std::map<std::string, Scenario> reg;

    reg["sit-2level"] = two_level();

    Scenario resonant = three_level(1.0);
    resonant.name = "sit-3level-resonant";
    reg["sit-3level-resonant"] = resonant;

    Scenario detuned = three_level(2.0);
    detuned.name = "sit-3level-detuned";
    reg["sit-3level-detuned"] = detuned;

    Scenario weak = detuned;
    weak.name = "coulomb-weak";
    weak.coulomb_r0 = 1e-21;
    reg["coulomb-weak"] = weak;

    Scenario strong = detuned;
    strong.name = "coulomb-strong";
    strong.coulomb_r0 = 3e-21;
    reg["coulomb-strong"] = strong;

    Scenario ablation_free = detuned;
    ablation_free.name = "ablation-free";
    ablation_free.mode = CoulombMode::vanishing_intraband;
    reg["ablation-free"] = ablation_free;

    Scenario ablation_strong = strong;
    ablation_strong.name = "ablation-strong";
    ablation_strong.mode = CoulombMode::vanishing_intraband;
    reg["ablation-strong"] = ablation_strong;

    // No field: checks that the single conduction population is a constant of
    // the motion whatever the Coulomb strength or closure mode.
    Scenario field_free;
    field_free.name = "field-free-remark";
    field_free.n_c = 1;
    field_free.n_v = 2;
    field_free.eps_c = {hbar * default_omega0};
    field_free.eps_v = {-2.0 * hbar * default_omega0, 0.0};
    field_free.omega0 = default_omega0;
    field_free.pulse_k = 0.0;
    field_free.coulomb_r0 = 1e-21;
    field_free.seed = benchmark_seed;
    field_free.nz = 16;
    field_free.dz = 75e-9;
    field_free.courant = 0.95;
    field_free.medium_begin = 6;
    field_free.medium_end = 10;
    field_free.N_b = default_N_b;
    field_free.source_cell = 1;
    field_free.probe_cell = 14;
    field_free.medium_probe_cell = 8;
    field_free.t_end = 2.4e-12;  // > 1e4 steps at this dz and courant
    field_free.record_stride = 10;
    field_free.init_pop_c = {0.3};
    field_free.init_pop_v = {0.5, 0.2};
    field_free.init_coherences.push_back({"v", 1, 2, Complex(0.1, 0.0)});
    reg["field-free-remark"] = field_free;

    return reg;
}

/// Loads a registry scenario by name or a scenario file by path.
inline Scenario resolve_scenario(const std::string& name_or_path) {
    auto reg = scenario_registry();
    if (auto it = reg.find(name_or_path); it != reg.end()) return it->second;
    return parse_scenario_file(name_or_path);
}

}  // namespace qdbloch
