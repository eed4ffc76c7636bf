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
#include <algorithm>
#include <cmath>
#include <complex>

#include "qdbloch/constants.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/layout.hpp"

namespace qdbloch {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Density matrix of one quantum dot: a d x d complex matrix with the block
/// structure [[rho_c, rho_cv], [rho_vc, rho_v]]. Populations sit on the
/// diagonal, coherences off it. The struct is plain storage plus layout;
/// structural properties (Hermiticity, positivity, bounds) are checked by the
/// free functions below, not enforced on construction, so that intermediate
/// algebraic states can be represented.
struct DensityMatrix {
    LevelLayout layout;
    Matrix mat;

    DensityMatrix() : layout(), mat(Matrix::Zero(2, 2)) {}

    explicit DensityMatrix(LevelLayout lay) : layout(lay), mat(Matrix::Zero(lay.d(), lay.d())) {}

    DensityMatrix(LevelLayout lay, Matrix m) : layout(lay), mat(std::move(m)) {
        if (mat.rows() != layout.d() || mat.cols() != layout.d()) {
            throw ShapeMismatch("DensityMatrix: matrix dimension does not match layout");
        }
    }

    int dim() const { return layout.d(); }

    // Block views (conduction / inter-band / valence).
    auto rho_c() { return mat.topLeftCorner(layout.n_c, layout.n_c); }
    auto rho_c() const { return mat.topLeftCorner(layout.n_c, layout.n_c); }
    auto rho_cv() { return mat.topRightCorner(layout.n_c, layout.n_v); }
    auto rho_cv() const { return mat.topRightCorner(layout.n_c, layout.n_v); }
    auto rho_vc() { return mat.bottomLeftCorner(layout.n_v, layout.n_c); }
    auto rho_vc() const { return mat.bottomLeftCorner(layout.n_v, layout.n_c); }
    auto rho_v() { return mat.bottomRightCorner(layout.n_v, layout.n_v); }
    auto rho_v() const { return mat.bottomRightCorner(layout.n_v, layout.n_v); }

    double trace() const { return mat.trace().real(); }
};

/// max |rho_ij - conj(rho_ji)|; zero for an exactly Hermitian matrix.
inline double hermiticity_defect(const Matrix& m) {
    double defect = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return defect;
}

inline double hermiticity_defect(const DensityMatrix& rho) { return hermiticity_defect(rho.mat); }

inline double max_abs_entry(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of a Hermitian matrix. Throws NonHermitianInput when
/// the Hermiticity defect exceeds tol_rel relative to the largest entry.
inline double min_eigenvalue(const Matrix& m, double tol_rel = tol_herm_rel) {
    const double scale = max_abs_entry(m);
    if (hermiticity_defect(m) > tol_rel * std::max(scale, 1e-300)) {
        throw NonHermitianInput("min_eigenvalue: input is not Hermitian to tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("min_eigenvalue: eigensolver did not converge");
    }
    return solver.eigenvalues().minCoeff();
}

inline double min_eigenvalue(const DensityMatrix& rho, double tol_rel = tol_herm_rel) {
    return min_eigenvalue(rho.mat, tol_rel);
}

/// Result of the population/coherence bound check. A report, not an
/// assertion: violations are recorded with their worst offender so ablation
/// runs can keep going and log how unphysical they became.
struct BoundsReport {
    bool populations_ok = true;
    bool coherences_ok = true;
    // Worst violator per category (most negative / largest excess).
    int worst_population_index = -1;
    double worst_population_value = 0.0;
    double worst_population_excess = 0.0;  // distance outside [0, trace0]
    int worst_coherence_row = -1;
    int worst_coherence_col = -1;
    double worst_coherence_magnitude = 0.0;
    double worst_coherence_excess = 0.0;  // magnitude beyond trace0/2

    bool ok() const { return populations_ok && coherences_ok; }
};

/// Checks every population against [0, trace0] and every coherence magnitude
/// against trace0/2, each padded by tol.
inline BoundsReport check_bounds(const DensityMatrix& rho, double trace0, double tol) {
    BoundsReport report;
    const int d = rho.dim();
    for (int i = 0; i < d; ++i) {
        const double p = rho.mat(i, i).real();
        const double excess = std::max(-p, p - trace0);
        if (excess > tol && excess > report.worst_population_excess) {
            report.populations_ok = false;
            report.worst_population_index = i;
            report.worst_population_value = p;
            report.worst_population_excess = excess;
        }
    }
    const double coh_bound = trace0 / 2.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            const double mag = std::abs(rho.mat(i, j));
            const double excess = mag - coh_bound;
            if (excess > tol && excess > report.worst_coherence_excess) {
                report.coherences_ok = false;
                report.worst_coherence_row = i;
                report.worst_coherence_col = j;
                report.worst_coherence_magnitude = mag;
                report.worst_coherence_excess = excess;
            }
        }
    }
    return report;
}

inline BoundsReport check_bounds(const DensityMatrix& rho, double trace0) {
    return check_bounds(rho, trace0, tol_psd_rel * trace0);
}

/// Copy of rho with the off-diagonal entries of the conduction and valence
/// blocks set to exactly zero. Inter-band block and all populations are left
/// untouched, so the trace is unchanged.
inline DensityMatrix project_intraband_zero(const DensityMatrix& rho) {
    DensityMatrix out = rho;
    const int n_c = rho.layout.n_c;
    const int d = rho.dim();
    for (int i = 0; i < n_c; ++i) {
        for (int j = 0; j < n_c; ++j) {
            if (i != j) out.mat(i, j) = Complex(0.0, 0.0);
        }
    }
    for (int i = n_c; i < d; ++i) {
        for (int j = n_c; j < d; ++j) {
            if (i != j) out.mat(i, j) = Complex(0.0, 0.0);
        }
    }
    return out;
}

}  // namespace qdbloch
