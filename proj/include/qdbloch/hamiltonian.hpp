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
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qdbloch/coulomb.hpp"
#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/layout.hpp"

namespace qdbloch {

using FieldVector = Eigen::Vector3cd;  // complex 3-component field sample, V/m

/// Free electron energies per level, joules.
struct FreeEnergies {
    Eigen::VectorXd eps_c;
    Eigen::VectorXd eps_v;

    FreeEnergies() = default;
    FreeEnergies(LevelLayout layout) : eps_c(Eigen::VectorXd::Zero(layout.n_c)), eps_v(Eigen::VectorXd::Zero(layout.n_v)) {}

    /// Non-fatal sanity findings (inverted band ordering, non-finite values
    /// are fatal and reported by validate as errors elsewhere).
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (eps_c.size() > 0 && eps_v.size() > 0 && eps_c.minCoeff() <= eps_v.maxCoeff()) {
            w.push_back("free energies: conduction levels do not all lie above valence levels");
        }
        return w;
    }
};

/// Dipole moment matrices with C^3 entries (C·m), stored per Cartesian
/// component. M_c and M_v are Hermitian with zero diagonal; M_cv is a general
/// rectangular block.
struct DipoleMatrices {
    LevelLayout layout;
    std::array<Matrix, 3> M_c;   // each n_c x n_c
    std::array<Matrix, 3> M_v;   // each n_v x n_v
    std::array<Matrix, 3> M_cv;  // each n_c x n_v

    DipoleMatrices() = default;
    explicit DipoleMatrices(LevelLayout lay) : layout(lay) {
        for (auto& m : M_c) m = Matrix::Zero(lay.n_c, lay.n_c);
        for (auto& m : M_v) m = Matrix::Zero(lay.n_v, lay.n_v);
        for (auto& m : M_cv) m = Matrix::Zero(lay.n_c, lay.n_v);
    }

    /// Enforced invariants; throws on structural violations, returns warnings
    /// for degenerate-but-allowed inputs (e.g. a field-decoupled M_cv = 0).
    std::vector<std::string> validate() const {
        const double scale = std::max(max_component(), 1e-300);
        for (int axis = 0; axis < 3; ++axis) {
            for (const Matrix* m : {&M_c[axis], &M_v[axis]}) {
                if (hermiticity_defect(*m) > tol_herm_rel * scale) {
                    throw ShapeMismatch("dipole matrices: intra-band block is not Hermitian");
                }
                for (Eigen::Index i = 0; i < m->rows(); ++i) {
                    if (std::abs((*m)(i, i)) > tol_herm_rel * scale) {
                        throw ShapeMismatch("dipole matrices: intra-band block has a nonzero diagonal");
                    }
                }
            }
        }
        std::vector<std::string> w;
        double cv_norm = 0.0;
        for (const auto& m : M_cv) cv_norm = std::max(cv_norm, max_abs_entry(m));
        if (cv_norm == 0.0) w.push_back("dipole matrices: M_cv is zero, the system is decoupled from the field");
        return w;
    }

    double max_component() const {
        double m = 0.0;
        for (const auto& b : M_c) m = std::max(m, max_abs_entry(b));
        for (const auto& b : M_v) m = std::max(m, max_abs_entry(b));
        for (const auto& b : M_cv) m = std::max(m, max_abs_entry(b));
        return m;
    }

    /// Full d x d dipole matrix for one Cartesian component:
    /// [[M_c, M_cv], [M_cv^dagger, M_v]].
    Matrix full(int axis) const {
        Matrix out(layout.d(), layout.d());
        out.topLeftCorner(layout.n_c, layout.n_c) = M_c[axis];
        out.topRightCorner(layout.n_c, layout.n_v) = M_cv[axis];
        out.bottomLeftCorner(layout.n_v, layout.n_c) = M_cv[axis].adjoint();
        out.bottomRightCorner(layout.n_v, layout.n_v) = M_v[axis];
        return out;
    }
};

namespace detail {

// E . M without conjugation: sum over components of E_a * M[a].
inline Matrix field_dot(const FieldVector& E, const std::array<Matrix, 3>& M) {
    Matrix out = E(0) * M[0];
    out += E(1) * M[1];
    out += E(2) * M[2];
    return out;
}

}  // namespace detail

/// Field-dependent basic potential V0 = V^F + V^E(E):
///   diagonal blocks   E0^c + (Re E) . M^c  and  E0^v + (Re E) . M^v,
///   off-diagonal      E . M^{cv}  and its adjoint.
/// Re binds to the field sample, which keeps the result Hermitian for any
/// complex E given Hermitian intra-band dipole blocks.
inline Matrix assemble_v0(const FieldVector& E, const FreeEnergies& F, const DipoleMatrices& M) {
    const LevelLayout& lay = M.layout;
    if (F.eps_c.size() != lay.n_c || F.eps_v.size() != lay.n_v) {
        throw ShapeMismatch("assemble_v0: free energy vectors do not match the dipole layout");
    }
    const FieldVector E_re = E.real().cast<Complex>();
    Matrix out(lay.d(), lay.d());
    out.topLeftCorner(lay.n_c, lay.n_c) = detail::field_dot(E_re, M.M_c);
    out.topLeftCorner(lay.n_c, lay.n_c) += F.eps_c.cast<Complex>().asDiagonal();
    out.bottomRightCorner(lay.n_v, lay.n_v) = detail::field_dot(E_re, M.M_v);
    out.bottomRightCorner(lay.n_v, lay.n_v) += F.eps_v.cast<Complex>().asDiagonal();
    const Matrix cv = detail::field_dot(E, M.M_cv);
    out.topRightCorner(lay.n_c, lay.n_v) = cv;
    out.bottomLeftCorner(lay.n_v, lay.n_c) = cv.adjoint();
    return out;
}

/// Scalar-field convenience for the 1D experiments: the field is real and
/// polarized along one axis.
inline Matrix assemble_v0(double E_axis, int axis, const FreeEnergies& F, const DipoleMatrices& M) {
    FieldVector E = FieldVector::Zero();
    E(axis) = Complex(E_axis, 0.0);
    return assemble_v0(E, F, M);
}

/// Total potential V(t, rho) = V0(E(t)) + V^C(rho).
inline Matrix assemble_total(const FieldVector& E, const DensityMatrix& rho, const FreeEnergies& F,
                             const DipoleMatrices& M, const CoulombTensor& R,
                             CoulombMode mode = CoulombMode::full) {
    Matrix out = assemble_v0(E, F, M);
    out += assemble_coulomb_potential(rho, R, mode).assembled(rho.layout);
    return out;
}

}  // namespace qdbloch
