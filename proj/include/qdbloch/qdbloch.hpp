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

#include "qdbloch/bloch.hpp"
#include "qdbloch/constants.hpp"
#include "qdbloch/coulomb.hpp"
#include "qdbloch/density_matrix.hpp"
#include "qdbloch/errors.hpp"
#include "qdbloch/experiment.hpp"
#include "qdbloch/expm.hpp"
#include "qdbloch/fdtd.hpp"
#include "qdbloch/hamiltonian.hpp"
#include "qdbloch/layout.hpp"
#include "qdbloch/pulse.hpp"
#include "qdbloch/scenario.hpp"
#include "qdbloch/svg_plot.hpp"
