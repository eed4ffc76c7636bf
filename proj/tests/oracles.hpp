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
//
// Independent reference implementations used only by the test suite. They
// deliberately mirror the defining formulas term by term (full four-index
// loops, characteristic polynomials, textbook RK4) and share no code with the
// production path they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "qdbloch/bloch.hpp"
#include "qdbloch/coulomb.hpp"
#include "qdbloch/density_matrix.hpp"

namespace oracle {

using qdbloch::Complex;
using qdbloch::CoulombTensor;
using qdbloch::DensityMatrix;
using qdbloch::LevelLayout;
using qdbloch::Matrix;

// --- Coulomb matrix builders as verbatim four-index accumulations ------------

inline Matrix lambda_c(const DensityMatrix& rho, const CoulombTensor& R) {
    const int n = R.layout.n_c;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int ap = 0; ap < n; ++ap)
                    out(i, k) += 2.0 * (R.rc(i, a, k, ap) - R.rc(i, a, ap, k)) * rho.mat(ap, a);
    return out;
}

inline Matrix lambda_v(const DensityMatrix& rho, const CoulombTensor& R) {
    const int n = R.layout.n_v;
    const int off = R.layout.n_c;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            for (int k = 0; k < n; ++k)
                for (int ap = 0; ap < n; ++ap)
                    out(i, k) += 2.0 * (R.rv(i, a, k, ap) - R.rv(i, a, ap, k)) * rho.mat(off + ap, off + a);
    return out;
}

inline Matrix zeta_v(const DensityMatrix& rho, const CoulombTensor& R) {
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nc);
    for (int i = 0; i < nc; ++i)
        for (int a = 0; a < nv; ++a)
            for (int k = 0; k < nc; ++k)
                for (int ap = 0; ap < nv; ++ap)
                    out(i, k) += R.rcv(i, a, k, ap) * rho.mat(nc + ap, nc + a);
    return out;
}

inline Matrix zeta_c(const DensityMatrix& rho, const CoulombTensor& R) {
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int a = 0; a < nc; ++a)
            for (int k = 0; k < nv; ++k)
                for (int ap = 0; ap < nc; ++ap) out(i, k) += R.rcv(a, i, ap, k) * rho.mat(ap, a);
    return out;
}

inline Matrix gamma_cv(const DensityMatrix& rho, const CoulombTensor& R) {
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nv);
    for (int i = 0; i < nc; ++i)
        for (int a = 0; a < nv; ++a)
            for (int ap = 0; ap < nc; ++ap)
                for (int k = 0; k < nv; ++k) out(i, k) -= R.rcv(i, a, ap, k) * rho.mat(ap, nc + a);
    return out;
}

inline Matrix eta_cv(const CoulombTensor& R) {
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nc);
    for (int i = 0; i < nc; ++i)
        for (int k = 0; k < nc; ++k)
            for (int b = 0; b < nv; ++b) out(i, k) -= R.rcv(i, b, k, b);
    return out;
}

inline Matrix kappa_v(const CoulombTensor& R) {
    const int nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int k = 0; k < nv; ++k)
            for (int b = 0; b < nv; ++b)
                out(i, k) += 2.0 * (R.rv(b, i, k, b) - R.rv(b, i, b, k));
    return out;
}

// --- Closed-form smallest eigenvalue for d <= 3 -------------------------------
//
// Characteristic-polynomial route: the Hermitian 2x2 case by the quadratic
// formula, the 3x3 case by the trigonometric solution of the depressed cubic.

inline double min_eigenvalue_closed_form(const Matrix& m) {
    const int d = static_cast<int>(m.rows());
    if (d == 1) return m(0, 0).real();
    if (d == 2) {
        const double a = m(0, 0).real(), c = m(1, 1).real();
        const double b2 = std::norm(m(0, 1));
        const double mean = 0.5 * (a + c);
        const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b2);
        return mean - radius;
    }
    if (d == 3) {
        // det(m - x I) = -x^3 + c2 x^2 + c1 x + c0 with real coefficients.
        const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
        const double q = m.trace().real() / 3.0;
        const double a = m(0, 0).real() - q, b = m(1, 1).real() - q, c = m(2, 2).real() - q;
        const double p2 = a * a + b * b + c * c + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        if (p == 0.0) return q;  // scalar matrix
        Matrix B = (m - q * Matrix::Identity(3, 3)) / p;
        const double det_b =
            (B(0, 0) * (B(1, 1) * B(2, 2) - B(1, 2) * B(2, 1)) -
             B(0, 1) * (B(1, 0) * B(2, 2) - B(1, 2) * B(2, 0)) +
             B(0, 2) * (B(1, 0) * B(2, 1) - B(1, 1) * B(2, 0)))
                .real();
        double r = det_b / 2.0;
        r = std::clamp(r, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        // Smallest eigenvalue uses the phase phi + 2 pi / 3.
        return q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    }
    throw std::invalid_argument("closed-form eigenvalue oracle supports d <= 3 only");
}

// --- Random generators --------------------------------------------------------

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double scale = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_complex(rng, scale);
    return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int d, double scale = 1.0) {
    const Matrix a = random_matrix(rng, d, d, scale);
    return 0.5 * (a + a.adjoint()).eval();
}

inline Matrix random_antihermitian(std::mt19937_64& rng, int d, double scale = 1.0) {
    const Matrix a = random_matrix(rng, d, d, scale);
    return 0.5 * (a - a.adjoint()).eval();
}

// Positive semi-definite with the requested trace: B B^dagger normalized.
inline Matrix random_psd(std::mt19937_64& rng, int d, double trace) {
    const Matrix b = random_matrix(rng, d, d);
    Matrix p = b * b.adjoint();
    return p * (trace / p.trace().real());
}

inline DensityMatrix random_density(std::mt19937_64& rng, LevelLayout layout, double trace = 1.0) {
    return DensityMatrix(layout, random_psd(rng, layout.d(), trace));
}

// --- Reference integrator -----------------------------------------------------
//
// Classical fixed-step RK4 on i hbar d_t rho = [V(E, rho), rho]; a high-order
// route to the same flow, used to measure the splitting scheme's convergence
// order.

inline DensityMatrix rk4_reference(const DensityMatrix& rho0, const qdbloch::QuantumDotModel& model,
                                   const qdbloch::FieldVector& E, qdbloch::CoulombMode mode, double T,
                                   int steps) {
    const double h = T / steps;
    auto rhs = [&](const Matrix& rho_mat) -> Matrix {
        DensityMatrix rho(rho0.layout, rho_mat);
        const Matrix V = qdbloch::assemble_total(E, rho, model.energies, model.dipoles, model.coulomb, mode);
        return Complex(0.0, -1.0 / qdbloch::hbar) * (V * rho_mat - rho_mat * V);
    };
    Matrix y = rho0.mat;
    for (int n = 0; n < steps; ++n) {
        const Matrix k1 = rhs(y);
        const Matrix k2 = rhs(y + 0.5 * h * k1);
        const Matrix k3 = rhs(y + 0.5 * h * k2);
        const Matrix k4 = rhs(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return DensityMatrix(rho0.layout, y);
}

// --- Two-level closed forms -----------------------------------------------------
//
// exp(-i theta (n . sigma)) for the Hermitian decomposition V = a I + b . sigma:
// U = e^{-i a dt/hbar} (cos(|b| dt/hbar) I - i sin(|b| dt/hbar) (b . sigma)/|b|).

inline Matrix su2_conjugation_propagator(const Matrix& V, double dt) {
    const double a = 0.5 * (V(0, 0).real() + V(1, 1).real());
    const double bz = 0.5 * (V(0, 0).real() - V(1, 1).real());
    const Complex boff = V(0, 1);  // bx - i by
    const double bnorm = std::sqrt(bz * bz + std::norm(boff));
    const double phi = bnorm * dt / qdbloch::hbar;
    Matrix U = Matrix::Identity(2, 2) * std::cos(phi);
    if (bnorm > 0.0) {
        const Complex factor = Complex(0.0, -std::sin(phi) / bnorm);
        U(0, 0) += factor * bz;
        U(1, 1) -= factor * bz;
        U(0, 1) += factor * boff;
        U(1, 0) += factor * std::conj(boff);
    }
    return std::exp(Complex(0.0, -a * dt / qdbloch::hbar)) * U;
}

}  // namespace oracle
