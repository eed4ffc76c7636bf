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
#include <complex>

#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"

namespace qdbloch {

enum class ExpMethod { eigendecomposition, scaling_squaring };

namespace detail {

inline double antihermiticity_defect(const Matrix& A) {
    double defect = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            defect = std::max(defect, std::abs(A(i, j) + std::conj(A(j, i))));
        }
    }
    return defect;
}

// Diagonalize the Hermitian matrix iA and exponentiate its spectrum:
// A = -i (iA) = Q diag(-i lambda) Q^dagger, so exp(A) = Q diag(e^{-i lambda}) Q^dagger.
inline Matrix expm_eigen(const Matrix& A) {
    const Matrix H = Complex(0.0, 1.0) * A;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("matrix exponential: eigendecomposition failed");
    }
    const auto& lambda = solver.eigenvalues();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -lambda(k)));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Scale the argument below 1/16, sum the Taylor series to machine accuracy,
// square back. Serves as an independent route to cross-check the
// eigendecomposition path.
inline Matrix expm_scaling_squaring(const Matrix& A) {
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
    if (!std::isfinite(norm)) {
        throw ConvergenceFailure("matrix exponential: non-finite input");
    }
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.0625) {
        scaled *= 0.5;
        ++squarings;
    }
    const Matrix B = A / std::ldexp(1.0, squarings);
    const Eigen::Index d = A.rows();
    Matrix result = Matrix::Identity(d, d);
    Matrix term = Matrix::Identity(d, d);
    for (int k = 1; k <= 24; ++k) {
        term = (term * B) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

}  // namespace detail

/// Unitary exponential of an anti-Hermitian matrix (A = -i dt V / hbar for a
/// Hermitian potential V). Throws NonHermitianInput when A is not
/// anti-Hermitian to tolerance.
inline Matrix matrix_exponential_antihermitian(const Matrix& A,
                                               ExpMethod method = ExpMethod::eigendecomposition,
                                               double tol_rel = tol_herm_rel) {
    if (A.rows() != A.cols()) {
        throw ShapeMismatch("matrix exponential: input must be square");
    }
    const double scale = std::max(max_abs_entry(A), 1e-300);
    if (detail::antihermiticity_defect(A) > tol_rel * scale) {
        throw NonHermitianInput("matrix exponential: input is not anti-Hermitian to tolerance");
    }
    switch (method) {
        case ExpMethod::eigendecomposition:
            return detail::expm_eigen(A);
        case ExpMethod::scaling_squaring:
            return detail::expm_scaling_squaring(A);
    }
    throw ConvergenceFailure("matrix exponential: unknown method");
}

}  // namespace qdbloch
