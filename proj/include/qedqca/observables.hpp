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

double occupation(const SparseState& state, int site, int mode);
// All occupations in one pass, indexed site * d_modes + mode.
std::vector<double> occupations(const SparseState& state);
double electric_expectation(const SparseState& state, HalfLinkId h);
// <H_E> = (g_E^2 / 2) eps sum over links of <E^2>.
double electric_energy(const SparseState& state, double g_electric, double epsilon);
cplx plaquette_expectation(const SparseState& state, PlaquetteAddress p);
SectorReport gauss_report(const SparseState& state);

}  // namespace qedqca
