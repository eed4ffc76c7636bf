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

#include <stdexcept>

#include "qdbloch/errors.hpp"

namespace qdbloch {

/// Block layout of a quantum-dot state: n_c conduction levels followed by
/// n_v valence levels in one d x d matrix.
struct LevelLayout {
    int n_c = 1;
    int n_v = 1;

    LevelLayout() = default;
    LevelLayout(int conduction, int valence) : n_c(conduction), n_v(valence) {
        if (n_c < 1 || n_v < 1) {
            throw ShapeMismatch("LevelLayout requires at least one conduction and one valence level");
        }
    }

    int d() const { return n_c + n_v; }

    // Global row/column index of valence level j (0-based within the valence block).
    int v(int j) const { return n_c + j; }

    bool operator==(const LevelLayout&) const = default;
};

}  // namespace qdbloch
