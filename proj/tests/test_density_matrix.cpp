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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qdbloch/density_matrix.hpp"

using namespace qdbloch;

TEST_CASE("hermiticity defect") {
    SECTION("identity is Hermitian") {
        DensityMatrix rho(LevelLayout(1, 1), Matrix::Identity(2, 2));
        CHECK(hermiticity_defect(rho) == 0.0);
    }
    SECTION("anti-Hermitian off-diagonal pair") {
        DensityMatrix rho(LevelLayout(1, 1));
        rho.mat(0, 1) = Complex(0, 1);
        rho.mat(1, 0) = Complex(0, 1);
        CHECK(hermiticity_defect(rho) == Catch::Approx(2.0));
    }
    SECTION("A + A^dagger constructions are Hermitian to rounding") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            const Matrix h = oracle::random_hermitian(rng, 3);
            CHECK(hermiticity_defect(h) <= 1e-15 * std::max(1.0, max_abs_entry(h)));
        }
    }
}

TEST_CASE("min eigenvalue") {
    SECTION("diagonal projector") {
        DensityMatrix rho(LevelLayout(1, 1));
        rho.mat(0, 0) = 1.0;
        CHECK(min_eigenvalue(rho) == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("rank-1 coherent state has eigenvalues 1 and 0") {
        DensityMatrix rho(LevelLayout(1, 1));
        rho.mat << 0.5, 0.5, 0.5, 0.5;
        CHECK(min_eigenvalue(rho) == Catch::Approx(0.0).margin(1e-14));
    }
    SECTION("excess coherence turns an eigenvalue negative") {
        // diag(0.6, 0.3, 0.1) with rho_01 = 0.5: the 2x2 sub-block has
        // eigenvalues 0.45 +- sqrt(0.0225 + 0.25), so the matrix dips below
        // zero (0.5^2 > 0.6 * 0.3).
        DensityMatrix rho(LevelLayout(1, 2));
        rho.mat = Matrix::Zero(3, 3);
        rho.mat(0, 0) = 0.6;
        rho.mat(1, 1) = 0.3;
        rho.mat(2, 2) = 0.1;
        rho.mat(0, 1) = 0.5;
        rho.mat(1, 0) = 0.5;
        const double expected = 0.45 - std::sqrt(0.0225 + 0.25);
        CHECK(expected < 0.0);
        CHECK(min_eigenvalue(rho) == Catch::Approx(expected).epsilon(1e-12));
        CHECK(min_eigenvalue(rho) ==
              Catch::Approx(oracle::min_eigenvalue_closed_form(rho.mat)).margin(1e-10));
    }
    SECTION("agrees with the characteristic-polynomial oracle for d <= 3") {
        std::mt19937_64 rng(21);
        for (int d = 1; d <= 3; ++d) {
            for (int trial = 0; trial < 100; ++trial) {
                const Matrix h = oracle::random_hermitian(rng, d);
                CHECK(min_eigenvalue(h) ==
                      Catch::Approx(oracle::min_eigenvalue_closed_form(h)).margin(1e-10));
            }
        }
    }
    SECTION("rejects non-Hermitian input") {
        Matrix m(2, 2);
        m << 1.0, Complex(0, 1), Complex(0, 1), 1.0;
        CHECK_THROWS_AS(min_eigenvalue(m), NonHermitianInput);
    }
}

TEST_CASE("population and coherence bounds") {
    SECTION("pure ground state passes") {
        DensityMatrix rho(LevelLayout(1, 1));
        rho.mat(1, 1) = 1.0;
        CHECK(check_bounds(rho, 1.0).ok());
    }
    SECTION("coherence above trace/2 is flagged") {
        DensityMatrix rho(LevelLayout(1, 1));
        rho.mat(0, 0) = 0.5;
        rho.mat(1, 1) = 0.5;
        rho.mat(0, 1) = 0.6;
        rho.mat(1, 0) = 0.6;
        const auto report = check_bounds(rho, 1.0);
        CHECK_FALSE(report.coherences_ok);
        CHECK(report.worst_coherence_magnitude == Catch::Approx(0.6));
        CHECK(report.worst_coherence_excess == Catch::Approx(0.1));
    }
    SECTION("negative population is flagged") {
        DensityMatrix rho(LevelLayout(1, 2));
        rho.mat(0, 0) = 0.7;
        rho.mat(1, 1) = -0.02;  // the ablation end state the report must catch
        rho.mat(2, 2) = 0.32;
        const auto report = check_bounds(rho, 1.0);
        CHECK_FALSE(report.populations_ok);
        CHECK(report.worst_population_index == 1);
        CHECK(report.worst_population_value == Catch::Approx(-0.02));
    }
    SECTION("Hermitian PSD matrices with the right trace never violate") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const int n_c = 1 + static_cast<int>(rng() % 2);
            const int n_v = 1 + static_cast<int>(rng() % 2);
            const LevelLayout layout(n_c, n_v);
            const double trace0 = 0.5 + oracle::uniform(rng, 0.0, 2.0);
            const DensityMatrix rho = oracle::random_density(rng, layout, trace0);
            CHECK(check_bounds(rho, trace0).ok());
        }
    }
}

TEST_CASE("intra-band projection") {
    SECTION("diagonal state unchanged") {
        DensityMatrix rho(LevelLayout(2, 2));
        rho.mat.diagonal() << 0.1, 0.2, 0.3, 0.4;
        const DensityMatrix out = project_intraband_zero(rho);
        CHECK((out.mat - rho.mat).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("valence coherence is zeroed with its conjugate, trace kept") {
        DensityMatrix rho(LevelLayout(1, 2));
        rho.mat(1, 1) = 0.5;
        rho.mat(2, 2) = 0.5;
        rho.mat(1, 2) = Complex(0.1, 0.2);
        rho.mat(2, 1) = Complex(0.1, -0.2);
        const DensityMatrix out = project_intraband_zero(rho);
        CHECK(out.mat(1, 2) == Complex(0, 0));
        CHECK(out.mat(2, 1) == Complex(0, 0));
        CHECK(out.trace() == Catch::Approx(rho.trace()));
    }
    SECTION("inter-band block untouched") {
        DensityMatrix rho(LevelLayout(2, 2));
        rho.mat(0, 2) = Complex(0.3, -0.1);
        rho.mat(2, 0) = Complex(0.3, 0.1);
        rho.mat(0, 1) = Complex(0.2, 0.0);
        rho.mat(1, 0) = Complex(0.2, 0.0);
        const DensityMatrix out = project_intraband_zero(rho);
        CHECK(out.mat(0, 2) == rho.mat(0, 2));
        CHECK(out.mat(0, 1) == Complex(0, 0));
    }
    SECTION("idempotent, trace preserving and Hermiticity preserving") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const LevelLayout layout(2, 2);
            DensityMatrix rho(layout, oracle::random_hermitian(rng, 4));
            const DensityMatrix once = project_intraband_zero(rho);
            const DensityMatrix twice = project_intraband_zero(once);
            CHECK((once.mat - twice.mat).cwiseAbs().maxCoeff() == 0.0);
            CHECK(once.trace() == Catch::Approx(rho.trace()));
            CHECK(hermiticity_defect(once) <= 1e-15 * std::max(1.0, max_abs_entry(once.mat)));
        }
    }
}

TEST_CASE("layout sanity") {
    CHECK_THROWS_AS(LevelLayout(0, 1), ShapeMismatch);
    CHECK_THROWS_AS(LevelLayout(1, 0), ShapeMismatch);
    CHECK(LevelLayout(2, 3).d() == 5);
    CHECK(LevelLayout(2, 3).v(0) == 2);
    CHECK_THROWS_AS(DensityMatrix(LevelLayout(1, 1), Matrix::Zero(3, 3)), ShapeMismatch);
}
