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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/layout.hpp"

namespace qdbloch {

/// How the density-dependent potential is closed. `vanishing_intraband`
/// restricts the intra-band contractions to diagonal density entries, the
/// closure used by models that drop intra-band coherences altogether.
enum class CoulombMode { full, vanishing_intraband };

/// Rank-4 Coulomb coefficient sets. R_c couples conduction pairs, R_v valence
/// pairs, R_cv one conduction and one valence index pair in the slot order
/// (c, v, c, v). Entries are energies in joules.
///
/// Invariants (enforced by the factory and the file loader):
///   pair swap        R_c[a1,a2,b1,b2] == R_c[a2,a1,b2,b1]   (same for R_v)
///   conjugation      R_c[a1,a2,b1,b2] == conj(R_c[b1,b2,a1,a2])
///                    (same for R_v; for R_cv with slots (i,a,k,b) <-> (k,b,i,a))
struct CoulombTensor {
    LevelLayout layout;
    std::vector<Complex> R_c;   // n_c^4, index (a1*n_c + a2)*n_c^2 + b1*n_c + b2
    std::vector<Complex> R_v;   // n_v^4
    std::vector<Complex> R_cv;  // (n_c*n_v)^2, slots (c, v, c, v)

    CoulombTensor() = default;
    explicit CoulombTensor(LevelLayout lay)
        : layout(lay),
          R_c(static_cast<std::size_t>(lay.n_c) * lay.n_c * lay.n_c * lay.n_c, Complex(0, 0)),
          R_v(static_cast<std::size_t>(lay.n_v) * lay.n_v * lay.n_v * lay.n_v, Complex(0, 0)),
          R_cv(static_cast<std::size_t>(lay.n_c) * lay.n_v * lay.n_c * lay.n_v, Complex(0, 0)) {}

    Complex& rc(int a1, int a2, int b1, int b2) {
        const int n = layout.n_c;
        return R_c[static_cast<std::size_t>(((a1 * n + a2) * n + b1)) * n + b2];
    }
    Complex rc(int a1, int a2, int b1, int b2) const {
        const int n = layout.n_c;
        return R_c[static_cast<std::size_t>(((a1 * n + a2) * n + b1)) * n + b2];
    }
    Complex& rv(int a1, int a2, int b1, int b2) {
        const int n = layout.n_v;
        return R_v[static_cast<std::size_t>(((a1 * n + a2) * n + b1)) * n + b2];
    }
    Complex rv(int a1, int a2, int b1, int b2) const {
        const int n = layout.n_v;
        return R_v[static_cast<std::size_t>(((a1 * n + a2) * n + b1)) * n + b2];
    }
    Complex& rcv(int i, int a, int k, int b) {
        return R_cv[static_cast<std::size_t>(((i * layout.n_v + a) * layout.n_c + k)) * layout.n_v + b];
    }
    Complex rcv(int i, int a, int k, int b) const {
        return R_cv[static_cast<std::size_t>(((i * layout.n_v + a) * layout.n_c + k)) * layout.n_v + b];
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : R_c) m = std::max(m, std::abs(v));
        for (const auto& v : R_v) m = std::max(m, std::abs(v));
        for (const auto& v : R_cv) m = std::max(m, std::abs(v));
        return m;
    }
};

/// Worst absolute deviation from the two tensor symmetries.
inline double tensor_symmetry_defect(const CoulombTensor& R) {
    double defect = 0.0;
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    for (int a1 = 0; a1 < nc; ++a1)
        for (int a2 = 0; a2 < nc; ++a2)
            for (int b1 = 0; b1 < nc; ++b1)
                for (int b2 = 0; b2 < nc; ++b2) {
                    defect = std::max(defect, std::abs(R.rc(a1, a2, b1, b2) - R.rc(a2, a1, b2, b1)));
                    defect = std::max(defect, std::abs(R.rc(a1, a2, b1, b2) - std::conj(R.rc(b1, b2, a1, a2))));
                }
    for (int a1 = 0; a1 < nv; ++a1)
        for (int a2 = 0; a2 < nv; ++a2)
            for (int b1 = 0; b1 < nv; ++b1)
                for (int b2 = 0; b2 < nv; ++b2) {
                    defect = std::max(defect, std::abs(R.rv(a1, a2, b1, b2) - R.rv(a2, a1, b2, b1)));
                    defect = std::max(defect, std::abs(R.rv(a1, a2, b1, b2) - std::conj(R.rv(b1, b2, a1, a2))));
                }
    for (int i = 0; i < nc; ++i)
        for (int a = 0; a < nv; ++a)
            for (int k = 0; k < nc; ++k)
                for (int b = 0; b < nv; ++b) {
                    defect = std::max(defect, std::abs(R.rcv(i, a, k, b) - std::conj(R.rcv(k, b, i, a))));
                }
    return defect;
}

namespace detail {

// Platform-independent uniform doubles in [0, 1) from a seeded mt19937_64.
// std::uniform_real_distribution is implementation-defined, which would break
// seed reproducibility across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

using IndexTuple = std::array<int, 4>;

inline IndexTuple swap_pairs(IndexTuple t) { return {t[1], t[0], t[3], t[2]}; }
inline IndexTuple conj_pairs(IndexTuple t) { return {t[2], t[3], t[0], t[1]}; }

}  // namespace detail

/// Seeded pseudo-random tensor with every entry magnitude in
/// [0.5*R0, 1.5*R0]. One value is drawn per symmetry orbit and propagated to
/// the orbit exactly (copied under the pair swap, conjugated under the pair
/// exchange), so both invariants hold bit-exactly and the magnitude range is
/// preserved. Entries on self-conjugate orbits are forced real.
inline CoulombTensor make_synthetic_tensor(LevelLayout layout, double R0, std::uint64_t seed) {
    using detail::IndexTuple;
    CoulombTensor R(layout);
    std::mt19937_64 rng(seed);

    auto draw = [&](bool force_real) -> Complex {
        const double mag = (0.5 + detail::uniform01(rng)) * R0;
        if (force_real) {
            const double sign = detail::uniform01(rng) < 0.5 ? -1.0 : 1.0;
            return Complex(sign * mag, 0.0);
        }
        const double phase = 2.0 * std::numbers::pi * detail::uniform01(rng);
        return Complex(mag * std::cos(phase), mag * std::sin(phase));
    };

    auto fill_four_index = [&](int n, auto&& at) {
        for (int a1 = 0; a1 < n; ++a1)
            for (int a2 = 0; a2 < n; ++a2)
                for (int b1 = 0; b1 < n; ++b1)
                    for (int b2 = 0; b2 < n; ++b2) {
                        const IndexTuple t{a1, a2, b1, b2};
                        const IndexTuple ts = detail::swap_pairs(t);
                        const IndexTuple tc = detail::conj_pairs(t);
                        const IndexTuple tsc = detail::swap_pairs(tc);
                        const IndexTuple rep = std::min(std::min(t, ts), std::min(tc, tsc));
                        if (t != rep) continue;  // value set when the representative is visited
                        const bool self_conjugate = (tc == t) || (tsc == t);
                        const Complex v = draw(self_conjugate);
                        at(t) = v;
                        at(ts) = v;
                        at(tc) = std::conj(v);
                        at(tsc) = std::conj(v);
                    }
    };

    fill_four_index(layout.n_c, [&](IndexTuple t) -> Complex& { return R.rc(t[0], t[1], t[2], t[3]); });
    fill_four_index(layout.n_v, [&](IndexTuple t) -> Complex& { return R.rv(t[0], t[1], t[2], t[3]); });

    // R_cv has only the conjugation symmetry (the two index pairs belong to
    // different species, so the pair swap does not apply).
    for (int i = 0; i < layout.n_c; ++i)
        for (int a = 0; a < layout.n_v; ++a)
            for (int k = 0; k < layout.n_c; ++k)
                for (int b = 0; b < layout.n_v; ++b) {
                    const bool is_rep = std::array{i, a, k, b} <= std::array{k, b, i, a};
                    if (!is_rep) continue;
                    const bool self_conjugate = (i == k && a == b);
                    const Complex v = draw(self_conjugate);
                    R.rcv(i, a, k, b) = v;
                    R.rcv(k, b, i, a) = std::conj(v);
                }

    return R;
}

// --- Wick-closure matrices -------------------------------------------------
//
// The seven builders below assemble the density-dependent Coulomb potential.
// In vanishing_intraband mode, the intra-band contractions keep only diagonal
// density entries; since the skipped terms are multiplied by entries that are
// exactly zero for a diagonal block, both modes coincide bit-for-bit on
// diagonal densities.

inline void require_layout(const DensityMatrix& rho, const CoulombTensor& R, const char* who) {
    if (!(rho.layout == R.layout)) {
        throw ShapeMismatch(std::string(who) + ": density matrix and Coulomb tensor layouts differ");
    }
}

/// Lambda^c_ik = 2 sum_{a,a' in c} (R^c_{i a k a'} - R^c_{i a a' k}) rho^c_{a' a}.
inline Matrix lambda_c(const DensityMatrix& rho, const CoulombTensor& R,
                       CoulombMode mode = CoulombMode::full) {
    require_layout(rho, R, "lambda_c");
    const int n = R.layout.n_c;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Complex s(0, 0);
            for (int a = 0; a < n; ++a)
                for (int ap = 0; ap < n; ++ap) {
                    if (mode == CoulombMode::vanishing_intraband && a != ap) continue;
                    s += (R.rc(i, a, k, ap) - R.rc(i, a, ap, k)) * rho.rho_c()(ap, a);
                }
            out(i, k) = 2.0 * s;
        }
    return out;
}

/// Lambda^v_ik = 2 sum_{a,a' in v} (R^v_{i a k a'} - R^v_{i a a' k}) rho^v_{a' a}.
inline Matrix lambda_v(const DensityMatrix& rho, const CoulombTensor& R,
                       CoulombMode mode = CoulombMode::full) {
    require_layout(rho, R, "lambda_v");
    const int n = R.layout.n_v;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Complex s(0, 0);
            for (int a = 0; a < n; ++a)
                for (int ap = 0; ap < n; ++ap) {
                    if (mode == CoulombMode::vanishing_intraband && a != ap) continue;
                    s += (R.rv(i, a, k, ap) - R.rv(i, a, ap, k)) * rho.rho_v()(ap, a);
                }
            out(i, k) = 2.0 * s;
        }
    return out;
}

/// zeta^v_ik = sum_{a,a' in v} R^{c-v}_{i a k a'} rho^v_{a' a}  (n_c x n_c).
inline Matrix zeta_v(const DensityMatrix& rho, const CoulombTensor& R,
                     CoulombMode mode = CoulombMode::full) {
    require_layout(rho, R, "zeta_v");
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nc);
    for (int i = 0; i < nc; ++i)
        for (int k = 0; k < nc; ++k) {
            Complex s(0, 0);
            for (int a = 0; a < nv; ++a)
                for (int ap = 0; ap < nv; ++ap) {
                    if (mode == CoulombMode::vanishing_intraband && a != ap) continue;
                    s += R.rcv(i, a, k, ap) * rho.rho_v()(ap, a);
                }
            out(i, k) = s;
        }
    return out;
}

/// zeta^c_ik = sum_{a,a' in c} R^{c-v}_{a i a' k} rho^c_{a' a}  (n_v x n_v).
inline Matrix zeta_c(const DensityMatrix& rho, const CoulombTensor& R,
                     CoulombMode mode = CoulombMode::full) {
    require_layout(rho, R, "zeta_c");
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int k = 0; k < nv; ++k) {
            Complex s(0, 0);
            for (int a = 0; a < nc; ++a)
                for (int ap = 0; ap < nc; ++ap) {
                    if (mode == CoulombMode::vanishing_intraband && a != ap) continue;
                    s += R.rcv(a, i, ap, k) * rho.rho_c()(ap, a);
                }
            out(i, k) = s;
        }
    return out;
}

/// gamma^{c-v}_ik = - sum_{a in v, a' in c} R^{c-v}_{i a a' k} rho^{cv}_{a' a}  (n_c x n_v).
inline Matrix gamma_cv(const DensityMatrix& rho, const CoulombTensor& R) {
    require_layout(rho, R, "gamma_cv");
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nv);
    for (int i = 0; i < nc; ++i)
        for (int k = 0; k < nv; ++k) {
            Complex s(0, 0);
            for (int a = 0; a < nv; ++a)
                for (int ap = 0; ap < nc; ++ap) {
                    s += R.rcv(i, a, ap, k) * rho.rho_cv()(ap, a);
                }
            out(i, k) = -s;
        }
    return out;
}

/// eta^{c-v}_ik = - sum_{b in v} R^{c-v}_{i b k b}; constant in rho.
inline Matrix eta_cv(const CoulombTensor& R) {
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nc, nc);
    for (int i = 0; i < nc; ++i)
        for (int k = 0; k < nc; ++k) {
            Complex s(0, 0);
            for (int b = 0; b < nv; ++b) s += R.rcv(i, b, k, b);
            out(i, k) = -s;
        }
    return out;
}

/// kappa^v_ik = 2 sum_{b in v} (R^v_{b i k b} - R^v_{b i b k}); constant in rho.
inline Matrix kappa_v(const CoulombTensor& R) {
    const int nv = R.layout.n_v;
    Matrix out = Matrix::Zero(nv, nv);
    for (int i = 0; i < nv; ++i)
        for (int k = 0; k < nv; ++k) {
            Complex s(0, 0);
            for (int b = 0; b < nv; ++b) s += R.rv(b, i, k, b) - R.rv(b, i, b, k);
            out(i, k) = 2.0 * s;
        }
    return out;
}

/// Blocks of the density-dependent potential V^C(rho). V_vc is the adjoint of
/// V_cv by construction.
struct CoulombPotential {
    Matrix V_c;   // n_c x n_c
    Matrix V_cv;  // n_c x n_v
    Matrix V_vc;  // n_v x n_c
    Matrix V_v;   // n_v x n_v

    Matrix assembled(const LevelLayout& layout) const {
        Matrix full(layout.d(), layout.d());
        full.topLeftCorner(layout.n_c, layout.n_c) = V_c;
        full.topRightCorner(layout.n_c, layout.n_v) = V_cv;
        full.bottomLeftCorner(layout.n_v, layout.n_c) = V_vc;
        full.bottomRightCorner(layout.n_v, layout.n_v) = V_v;
        return full;
    }
};

/// V^c = Lambda^c + zeta^v + eta^{c-v};  V^{c-v} = gamma^{c-v};
/// V^{v-c} = (V^{c-v})^dagger;           V^v = Lambda^v + zeta^c + kappa^v.
inline CoulombPotential assemble_coulomb_potential(const DensityMatrix& rho, const CoulombTensor& R,
                                                   CoulombMode mode = CoulombMode::full) {
    require_layout(rho, R, "assemble_coulomb_potential");
    CoulombPotential V;
    V.V_c = lambda_c(rho, R, mode) + zeta_v(rho, R, mode) + eta_cv(R);
    V.V_cv = gamma_cv(rho, R);
    V.V_vc = V.V_cv.adjoint();
    V.V_v = lambda_v(rho, R, mode) + zeta_c(rho, R, mode) + kappa_v(R);
    return V;
}

/// Density-dependent shifts of the free level energies: the diagonals of the
/// assembled V^c and V^v blocks, reported as real numbers. A diagnostic; the
/// solver always uses the full potential. Throws NonRealShift when an
/// imaginary residue signals a tensor-symmetry violation.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> energy_shifts(const DensityMatrix& rho,
                                                                 const CoulombTensor& R) {
    require_layout(rho, R, "energy_shifts");
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    Eigen::VectorXd shift_c(nc), shift_v(nv);

    const double scale = std::max(R.max_abs() * std::max(1.0, max_abs_entry(rho.mat)), 1e-300);
    auto to_real = [&](Complex z, const char* who) {
        if (std::abs(z.imag()) > tol_herm_rel * scale) {
            throw NonRealShift(std::string(who) + ": imaginary residue exceeds tolerance");
        }
        return z.real();
    };

    for (int i = 0; i < nc; ++i) {
        Complex s(0, 0);
        for (int a = 0; a < nc; ++a)
            for (int ap = 0; ap < nc; ++ap)
                s += 2.0 * (R.rc(i, a, i, ap) - R.rc(i, a, ap, i)) * rho.rho_c()(ap, a);
        for (int a = 0; a < nv; ++a)
            for (int ap = 0; ap < nv; ++ap) s += R.rcv(i, a, i, ap) * rho.rho_v()(ap, a);
        for (int b = 0; b < nv; ++b) s -= R.rcv(i, b, i, b);
        shift_c(i) = to_real(s, "energy_shifts[c]");
    }
    for (int i = 0; i < nv; ++i) {
        Complex s(0, 0);
        for (int a = 0; a < nv; ++a)
            for (int ap = 0; ap < nv; ++ap)
                s += 2.0 * (R.rv(i, a, i, ap) - R.rv(i, a, ap, i)) * rho.rho_v()(ap, a);
        for (int a = 0; a < nc; ++a)
            for (int ap = 0; ap < nc; ++ap) s += R.rcv(a, i, ap, i) * rho.rho_c()(ap, a);
        for (int b = 0; b < nv; ++b) s += 2.0 * (R.rv(b, i, i, b) - R.rv(b, i, b, i));
        shift_v(i) = to_real(s, "energy_shifts[v]");
    }
    return {shift_c, shift_v};
}

// --- Plain-text tensor files -----------------------------------------------
//
// One entry per line: `<block> <a1> <a2> <a1'> <a2'> <re> <im>` with block in
// {c, v, cv} and 1-based indices. Unlisted entries are zero. Loading rejects
// tensors whose symmetry defect exceeds 1e-12 relative to the largest entry.

inline void save_coulomb_tensor(const CoulombTensor& R, std::ostream& os) {
    os.precision(17);
    const int nc = R.layout.n_c, nv = R.layout.n_v;
    os << "# coulomb tensor, layout n_c=" << nc << " n_v=" << nv << "\n";
    os << "# block a1 a2 a1p a2p re im (1-based indices)\n";
    for (int a1 = 0; a1 < nc; ++a1)
        for (int a2 = 0; a2 < nc; ++a2)
            for (int b1 = 0; b1 < nc; ++b1)
                for (int b2 = 0; b2 < nc; ++b2) {
                    const Complex v = R.rc(a1, a2, b1, b2);
                    if (v != Complex(0, 0))
                        os << "c " << a1 + 1 << ' ' << a2 + 1 << ' ' << b1 + 1 << ' ' << b2 + 1 << ' '
                           << v.real() << ' ' << v.imag() << "\n";
                }
    for (int a1 = 0; a1 < nv; ++a1)
        for (int a2 = 0; a2 < nv; ++a2)
            for (int b1 = 0; b1 < nv; ++b1)
                for (int b2 = 0; b2 < nv; ++b2) {
                    const Complex v = R.rv(a1, a2, b1, b2);
                    if (v != Complex(0, 0))
                        os << "v " << a1 + 1 << ' ' << a2 + 1 << ' ' << b1 + 1 << ' ' << b2 + 1 << ' '
                           << v.real() << ' ' << v.imag() << "\n";
                }
    for (int i = 0; i < nc; ++i)
        for (int a = 0; a < nv; ++a)
            for (int k = 0; k < nc; ++k)
                for (int b = 0; b < nv; ++b) {
                    const Complex v = R.rcv(i, a, k, b);
                    if (v != Complex(0, 0))
                        os << "cv " << i + 1 << ' ' << a + 1 << ' ' << k + 1 << ' ' << b + 1 << ' '
                           << v.real() << ' ' << v.imag() << "\n";
                }
}

inline CoulombTensor load_coulomb_tensor(std::istream& is, LevelLayout layout) {
    CoulombTensor R(layout);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string block;
        if (!(ls >> block)) continue;  // blank or comment line
        int a1, a2, b1, b2;
        double re, im;
        if (!(ls >> a1 >> a2 >> b1 >> b2 >> re >> im)) {
            throw ConfigError("coulomb tensor file: malformed line " + std::to_string(lineno));
        }
        auto in_range = [](int idx, int n) { return idx >= 1 && idx <= n; };
        const Complex v(re, im);
        if (block == "c") {
            if (!in_range(a1, layout.n_c) || !in_range(a2, layout.n_c) || !in_range(b1, layout.n_c) ||
                !in_range(b2, layout.n_c))
                throw ConfigError("coulomb tensor file: c index out of range, line " + std::to_string(lineno));
            R.rc(a1 - 1, a2 - 1, b1 - 1, b2 - 1) = v;
        } else if (block == "v") {
            if (!in_range(a1, layout.n_v) || !in_range(a2, layout.n_v) || !in_range(b1, layout.n_v) ||
                !in_range(b2, layout.n_v))
                throw ConfigError("coulomb tensor file: v index out of range, line " + std::to_string(lineno));
            R.rv(a1 - 1, a2 - 1, b1 - 1, b2 - 1) = v;
        } else if (block == "cv") {
            if (!in_range(a1, layout.n_c) || !in_range(a2, layout.n_v) || !in_range(b1, layout.n_c) ||
                !in_range(b2, layout.n_v))
                throw ConfigError("coulomb tensor file: cv index out of range, line " + std::to_string(lineno));
            R.rcv(a1 - 1, a2 - 1, b1 - 1, b2 - 1) = v;
        } else {
            throw ConfigError("coulomb tensor file: unknown block '" + block + "', line " +
                              std::to_string(lineno));
        }
    }
    const double scale = std::max(R.max_abs(), 1e-300);
    if (tensor_symmetry_defect(R) > 1e-12 * scale) {
        throw ConfigError("coulomb tensor file: symmetry invariants violated beyond 1e-12");
    }
    return R;
}

inline CoulombTensor load_coulomb_tensor(const std::string& path, LevelLayout layout) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open coulomb tensor file: " + path);
    return load_coulomb_tensor(f, layout);
}

}  // namespace qdbloch
