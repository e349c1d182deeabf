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

#include "qedqca/observables.hpp"

#include "qedqca/evolution.hpp"

namespace qedqca {

double occupation(const SparseState& state, int site, int mode) {
  int bit = state.layout().fermion_bit(site, mode);
  double s = 0;
  for (const auto& [c, a] : state.sorted()) {
    if (c.bit(bit)) s += std::norm(a);
  }
  return s;
}

std::vector<double> occupations(const SparseState& state) {
  const Lattice& lat = state.lattice();
  const ConfigLayout& layout = state.layout();
  std::vector<double> occ(static_cast<std::size_t>(lat.site_count()) * lat.d_modes());
  for (const auto& [c, a] : state.sorted()) {
    double w = std::norm(a);
    for (int x = 0; x < lat.site_count(); ++x)
      for (int j = 0; j < lat.d_modes(); ++j)
        if (c.bit(layout.fermion_bit(x, j))) occ[x * lat.d_modes() + j] += w;
  }
  return occ;
}

double electric_expectation(const SparseState& state, HalfLinkId h) {
  double s = 0;
  for (const auto& [c, a] : state.sorted()) s += std::norm(a) * half_link_electric(state.layout(), c, h);
  return s;
}

double electric_energy(const SparseState& state, double g_electric, double epsilon) {
  const ConfigLayout& layout = state.layout();
  int links = state.lattice().link_count(), k = layout.k();
  double s = 0;
  for (const auto& [c, a] : state.sorted()) {
    double e2 = 0;
    for (int l = 0; l < links; ++l) {
      double v = symmetric_rep(layout.link_value(c, l), k);
      e2 += v * v;
    }
    s += std::norm(a) * e2;
  }
  return g_electric * g_electric / 2 * epsilon * s;
}

cplx plaquette_expectation(const SparseState& state, PlaquetteAddress p) {
  const ConfigLayout& layout = state.layout();
  PlaquetteBlock b = plaquette_block(state.lattice(), p);
  cplx s{};
  for (const auto& [c, a] : state.sorted()) {
    cplx img = state.amplitude(plaquette_shift(layout, b, c, 1));
    if (img != cplx{}) s += std::conj(img) * a * static_cast<double>(plaquette_sign(layout, b, c));
  }
  return s;
}

SectorReport gauss_report(const SparseState& state) { return sector_map(state); }

}  // namespace qedqca
