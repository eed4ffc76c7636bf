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

#include "qdbloch/constants.hpp"
#include "qdbloch/coulomb.hpp"
#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/expm.hpp"
#include "qdbloch/hamiltonian.hpp"

namespace qdbloch {

/// Time-stepping configuration for the frozen-coefficient exponential
/// splitting. The scheme conjugates the state with exp(-i dt V / hbar), where
/// V is assembled from the state at the step start; with the density-dependent
/// Coulomb term on, this freezing costs one order of accuracy (global order
/// one) but keeps every step exactly unitary.
struct SolverConfig {
    double dt = 1e-16;  // s
    CoulombMode mode = CoulombMode::full;
    ExpMethod exp_method = ExpMethod::eigendecomposition;
    double tol_herm = tol_herm_rel;
    double tol_psd = tol_psd_rel;

    SolverConfig() = default;
    SolverConfig(double step) : dt(step) {
        if (!(dt > 0.0)) throw ConfigError("SolverConfig: dt must be positive");
    }
};

/// Static single-dot model data: level energies, dipole matrices and the
/// Coulomb coefficient tensor.
struct QuantumDotModel {
    LevelLayout layout;
    FreeEnergies energies;
    DipoleMatrices dipoles;
    CoulombTensor coulomb;
};

/// rho -> U rho U^dagger with U = exp(-i dt V / hbar). V Hermitian makes U
/// unitary, so trace, Hermiticity and the whole spectrum of rho are preserved
/// to rounding.
///
/// The eigendecomposition path evaluates the conjugation in the eigenbasis of
/// V, where entry (i, j) picks up the phase difference e^{-i (l_i - l_j) dt / hbar},
/// and applies it in increment form:
///     rho' = rho + Q [ (E - 1) o (Q^dagger rho Q) ] Q^dagger.
/// The correction matrix has an exactly zero diagonal, so the rounding of the
/// unitary sandwich cannot feed a one-sided per-step bias into the trace; the
/// plain U rho U^dagger sandwich accumulates ~1e-16 per step with a constant
/// sign over constant-potential stretches, which would breach the trace
/// budget of long runs. The scaling_squaring path forms U explicitly and
/// sandwiches; it is the independent cross-check route.
inline DensityMatrix unitary_conjugation_step(const DensityMatrix& rho, const Matrix& V, double dt,
                                              ExpMethod method = ExpMethod::eigendecomposition,
                                              double tol_herm = tol_herm_rel) {
    if (V.rows() != rho.dim() || V.cols() != rho.dim()) {
        throw ShapeMismatch("unitary_conjugation_step: potential dimension mismatch");
    }
    const double scale = std::max(max_abs_entry(V), 1e-300);
    if (hermiticity_defect(V) > tol_herm * scale) {
        throw NonHermitianPotential("unitary_conjugation_step: potential is not Hermitian to tolerance");
    }
    if (method == ExpMethod::scaling_squaring) {
        const Matrix A = Complex(0.0, -dt / hbar) * V;
        const Matrix U = matrix_exponential_antihermitian(A, method, tol_herm);
        return DensityMatrix(rho.layout, U * rho.mat * U.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(V);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("unitary_conjugation_step: eigendecomposition failed");
    }
    const Matrix& Q = solver.eigenvectors();
    const auto& lambda = solver.eigenvalues();
    const Matrix X = Q.adjoint() * rho.mat * Q;
    const int d = rho.dim();
    Matrix C = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double phi = (lambda(i) - lambda(j)) * dt / hbar;
            const Complex f(std::cos(phi) - 1.0, -std::sin(phi));
            C(i, j) = f * X(i, j);
            C(j, i) = std::conj(f) * X(j, i);
        }
    }
    return DensityMatrix(rho.layout, rho.mat + Q * C * Q.adjoint());
}

/// One splitting step of i hbar d_t rho = [V(t, rho), rho]: assemble V from
/// the current state and field sample, conjugate, and in vanishing_intraband
/// mode zero the intra-band coherences of the result.
inline DensityMatrix bloch_step(const DensityMatrix& rho, const FieldVector& E,
                                const QuantumDotModel& model, const SolverConfig& cfg) {
    const Matrix V = assemble_total(E, rho, model.energies, model.dipoles, model.coulomb, cfg.mode);
    DensityMatrix next = unitary_conjugation_step(rho, V, cfg.dt, cfg.exp_method, cfg.tol_herm);
    if (cfg.mode == CoulombMode::vanishing_intraband) {
        next = project_intraband_zero(next);
    }
    return next;
}

/// Scalar-field overload for the 1D propagation loop.
inline DensityMatrix bloch_step(const DensityMatrix& rho, double E_axis, int axis,
                                const QuantumDotModel& model, const SolverConfig& cfg) {
    FieldVector E = FieldVector::Zero();
    E(axis) = Complex(E_axis, 0.0);
    return bloch_step(rho, E, model, cfg);
}

}  // namespace qdbloch
