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

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "qdbloch/bloch.hpp"
#include "qdbloch/constants.hpp"
#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/pulse.hpp"

namespace qdbloch {

enum class BoundaryKind { mur, reflecting };

/// 1D staggered grid: E_x at integer positions and times, H_y at half
/// positions and times. Quantum dots occupy the cell interval
/// [medium_begin, medium_end).
struct GridSpec {
    int nz = 0;
    double dz = 0.0;  // m
    double dt = 0.0;  // s
    Eigen::VectorXd eps;  // F/m per cell
    Eigen::VectorXd mu;   // H/m per cell
    int medium_begin = 0;
    int medium_end = 0;  // half-open
    double N_b = 0.0;    // quantum-dot density, 1/m^3
    BoundaryKind boundary = BoundaryKind::mur;

    GridSpec() = default;
    GridSpec(int cells, double cell_size, double time_step, double permittivity = vacuum_permittivity,
             double permeability = vacuum_permeability)
        : nz(cells),
          dz(cell_size),
          dt(time_step),
          eps(Eigen::VectorXd::Constant(cells, permittivity)),
          mu(Eigen::VectorXd::Constant(cells, permeability)) {
        validate();
    }

    double max_speed() const {
        double c_max = 0.0;
        for (int i = 0; i < nz; ++i) c_max = std::max(c_max, 1.0 / std::sqrt(eps(i) * mu(i)));
        return c_max;
    }

    double courant() const { return max_speed() * dt / dz; }

    void validate() const {
        if (nz < 3 || !(dz > 0.0) || !(dt > 0.0)) {
            throw ConfigError("GridSpec: need nz >= 3 and positive dz, dt");
        }
        if (eps.size() != nz || mu.size() != nz || eps.minCoeff() <= 0.0 || mu.minCoeff() <= 0.0) {
            throw ConfigError("GridSpec: eps/mu must be positive and sized per cell");
        }
        if (courant() > 1.0 + 1e-12) {
            throw CflViolation("GridSpec: CFL violated, c*dt/dz > 1");
        }
        if (medium_begin < 0 || medium_end > nz || medium_begin > medium_end) {
            throw ConfigError("GridSpec: medium range must lie within the grid");
        }
    }
};

/// P = N_b Re Tr(M_axis rho), with M_axis the full d x d dipole matrix on the
/// polarization axis. C/m^2.
inline double polarization(const DensityMatrix& rho, const DipoleMatrices& M, int axis, double N_b) {
    return N_b * (M.full(axis) * rho.mat).trace().real();
}

inline double polarization_cached(const DensityMatrix& rho, const Matrix& M_full_axis, double N_b) {
    return N_b * (M_full_axis * rho.mat).trace().real();
}

/// Field state plus one density matrix per medium cell. The H array holds
/// H_{i+1/2} at index i; E_prev keeps the E samples from before the last
/// update so the staggered (exactly conserved) field energy can be formed.
struct FieldGrid {
    GridSpec spec;
    Eigen::VectorXd E;       // nz, at time t
    Eigen::VectorXd E_prev;  // nz, at time t - dt
    Eigen::VectorXd H;       // nz - 1, at time t - dt/2
    Eigen::VectorXd P;       // nz, zero outside the medium
    std::vector<DensityMatrix> cells;  // per medium cell
    double t = 0.0;          // time of the E samples

    // Mur boundary memory: interior-neighbor values from the previous step.
    double mur_left_neighbor = 0.0;
    double mur_right_neighbor = 0.0;

    FieldGrid() = default;
    FieldGrid(GridSpec grid, const DensityMatrix& initial_state)
        : spec(std::move(grid)),
          E(Eigen::VectorXd::Zero(spec.nz)),
          E_prev(Eigen::VectorXd::Zero(spec.nz)),
          H(Eigen::VectorXd::Zero(spec.nz - 1)),
          P(Eigen::VectorXd::Zero(spec.nz)) {
        spec.validate();
        cells.assign(static_cast<std::size_t>(spec.medium_end - spec.medium_begin), initial_state);
    }

    int medium_cell_count() const { return static_cast<int>(cells.size()); }
    DensityMatrix& cell(int grid_index) { return cells[static_cast<std::size_t>(grid_index - spec.medium_begin)]; }
    const DensityMatrix& cell(int grid_index) const {
        return cells[static_cast<std::size_t>(grid_index - spec.medium_begin)];
    }
};

/// Leapfrog update over one dt: H half-step from the spatial difference of E,
/// one Bloch step per medium cell driven by the E sample at the cell, then the
/// E full step from the difference of H minus the polarization increment.
/// The Bloch potential is frozen over the step using the pre-update field.
inline void yee_step(FieldGrid& g, const QuantumDotModel& model, const SolverConfig& cfg, int axis = 0) {
    const GridSpec& s = g.spec;
    const double dt = s.dt, dz = s.dz;

    // H sweep: mu dH/dt = -dE/dz.
    for (int i = 0; i < s.nz - 1; ++i) {
        g.H(i) -= dt / (s.mu(i) * dz) * (g.E(i + 1) - g.E(i));
    }

    // Bloch sweep; cells are independent. P is advanced together with rho so
    // the E update can difference it in time.
    Matrix M_full = model.dipoles.full(axis);
    Eigen::VectorXd P_next = g.P;
    for (int i = s.medium_begin; i < s.medium_end; ++i) {
        DensityMatrix& rho = g.cell(i);
        rho = bloch_step(rho, g.E(i), axis, model, cfg);
        P_next(i) = polarization_cached(rho, M_full, s.N_b);
    }

    const double left_neighbor_old = g.E(1);
    const double right_neighbor_old = g.E(s.nz - 2);
    const double E0_old = g.E(0);
    const double Eend_old = g.E(s.nz - 1);
    g.E_prev = g.E;

    // E sweep: eps dE/dt = -dH/dz - dP/dt.
    for (int i = 1; i < s.nz - 1; ++i) {
        g.E(i) -= dt / (s.eps(i) * dz) * (g.H(i) - g.H(i - 1));
        g.E(i) -= (P_next(i) - g.P(i)) / s.eps(i);
    }

    if (s.boundary == BoundaryKind::reflecting) {
        g.E(0) = 0.0;
        g.E(s.nz - 1) = 0.0;
    } else {
        const double c_left = 1.0 / std::sqrt(s.eps(0) * s.mu(0));
        const double c_right = 1.0 / std::sqrt(s.eps(s.nz - 1) * s.mu(s.nz - 1));
        const double k_left = (c_left * dt - dz) / (c_left * dt + dz);
        const double k_right = (c_right * dt - dz) / (c_right * dt + dz);
        g.E(0) = left_neighbor_old + k_left * (g.E(1) - E0_old);
        g.E(s.nz - 1) = right_neighbor_old + k_right * (g.E(s.nz - 2) - Eend_old);
    }
    g.mur_left_neighbor = left_neighbor_old;
    g.mur_right_neighbor = right_neighbor_old;

    g.P = P_next;
    g.t += dt;

    if (!g.E.allFinite() || !g.H.allFinite()) {
        throw NonFiniteField("yee_step: field blew up to non-finite values");
    }
}

/// Per-step soft-source increment that makes the lattice radiate amplitude 1
/// to each side at angular frequency omega. In the continuum limit this is
/// 2 S; on the lattice the radiation impedance differs by the dispersion
/// factor S tan(k dz / 2) / sin(omega dt / 2), with k the discrete wavenumber
/// at omega, which the increment divides out.
inline double soft_source_gain(double courant, double omega, double dt) {
    if (omega <= 0.0) return 2.0 * courant;
    const double sh = std::sin(0.5 * omega * dt);
    const double arg = sh / courant;
    if (arg >= 1.0) {
        throw ConfigError("soft source: carrier frequency is not resolvable on this grid");
    }
    return 2.0 * sh / std::tan(std::asin(arg));
}

/// Additive (soft) source: a current sheet at the source cell that radiates
/// the sech-modulated carrier symmetrically with peak amplitude E0, calibrated
/// against the lattice radiation impedance at the carrier frequency.
inline void inject_pulse(FieldGrid& g, const PulseSpec& pulse, int source_cell, double t_center) {
    const GridSpec& s = g.spec;
    const double c_src = 1.0 / std::sqrt(s.eps(source_cell) * s.mu(source_cell));
    const double courant = c_src * s.dt / s.dz;
    g.E(source_cell) += soft_source_gain(courant, pulse.omega0, s.dt) * pulse.field(g.t - t_center);
}

/// Staggered discrete field energy 0.5 sum(eps E^n E^{n+1} + mu (H^{n+1/2})^2) dz,
/// the quadratic form the lossless leapfrog conserves exactly: the E samples
/// bracket the half-step H samples in time. Valid right after a step.
inline double discrete_em_energy(const FieldGrid& g) {
    const GridSpec& s = g.spec;
    double energy = 0.0;
    for (int i = 0; i < s.nz; ++i) energy += 0.5 * s.eps(i) * g.E(i) * g.E_prev(i) * s.dz;
    for (int i = 0; i < s.nz - 1; ++i) energy += 0.5 * s.mu(i) * g.H(i) * g.H(i) * s.dz;
    return energy;
}

}  // namespace qdbloch
