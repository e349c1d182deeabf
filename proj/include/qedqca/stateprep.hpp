// Copyright 2026 The qedqca Authors
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

#include <vector>

#include "qedqca/fock.hpp"
#include "qedqca/lattice.hpp"

namespace qedqca {

struct PathStep {
  int site = 0;
  Direction dir;
};

SparseState vacuum(const Lattice& lat);
// Antiparticle modes filled: mode 1 in 2D, modes 2 and 3 in 3D.
SparseState dirac_sea(const Lattice& lat);

// a+_{x,j} followed by V along the path; the path starts at x.
SparseState string_create(const SparseState& state, int site, int mode, const std::vector<PathStep>& path);
// Product of V+ along a closed path.
SparseState loop_create(const SparseState& state, const std::vector<PathStep>& path);
// a_{x,1} a+_{x,0} in 2D, a_{x,2} a+_{x,0} in 3D.
SparseState pair_create(const SparseState& state, int site);

std::vector<PathStep> plaquette_loop(const Lattice& lat, PlaquetteAddress p);
std::vector<PathStep> reversed_path(const Lattice& lat, const std::vector<PathStep>& path);

}  // namespace qedqca
