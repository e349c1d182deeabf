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

#include "qedqca/stateprep.hpp"

#include <stdexcept>

#include "qedqca/jw_oracle.hpp"

namespace qedqca {

namespace {

int check_path(const Lattice& lat, const std::vector<PathStep>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const PathStep& s = path[i];
    if (s.site < 0 || s.site >= lat.site_count() || s.dir.axis < 0 || s.dir.axis >= lat.spatial_dim() ||
        (s.dir.sign != 1 && s.dir.sign != -1)) {
      throw std::invalid_argument("path step leaves the lattice");
    }
    if (i + 1 < path.size() && lat.shift(s.site, s.dir) != path[i + 1].site) {
      throw std::invalid_argument("path is not connected");
    }
  }
  return path.empty() ? -1 : lat.shift(path.back().site, path.back().dir);
}

Operator path_product(const Oracle& o, const std::vector<PathStep>& path, bool dagger) {
  Operator op = Operator::identity();
  for (const PathStep& s : path) {
    Operator v = o.V({s.site, s.dir});
    op = op * (dagger ? v.adjoint() : v);
  }
  return op;
}

}  // namespace

SparseState vacuum(const Lattice& lat) {
  SparseState s(lat);
  s.add(s.layout().empty(), 1.0);
  return s;
}

SparseState dirac_sea(const Lattice& lat) {
  SparseState s(lat);
  BasisConfig c = s.layout().empty();
  for (int x = 0; x < lat.site_count(); ++x) {
    if (lat.spatial_dim() == 2) {
      c.set_bit(s.layout().fermion_bit(x, 1), true);
    } else {
      c.set_bit(s.layout().fermion_bit(x, 2), true);
      c.set_bit(s.layout().fermion_bit(x, 3), true);
    }
  }
  s.add(c, 1.0);
  return s;
}

SparseState string_create(const SparseState& state, int site, int mode, const std::vector<PathStep>& path) {
  const Lattice& lat = state.lattice();
  check_path(lat, path);
  if (!path.empty() && path.front().site != site) throw std::invalid_argument("path must start at the created fermion");
  Oracle o(lat);
  return o.apply(o.a_dag(site, mode) * path_product(o, path, false), state);
}

SparseState loop_create(const SparseState& state, const std::vector<PathStep>& path) {
  const Lattice& lat = state.lattice();
  int end = check_path(lat, path);
  if (path.empty() || end != path.front().site) throw std::invalid_argument("loop path must be closed");
  Oracle o(lat);
  return o.apply(path_product(o, path, true), state);
}

SparseState pair_create(const SparseState& state, int site) {
  const Lattice& lat = state.lattice();
  Oracle o(lat);
  int hole_mode = lat.spatial_dim() == 2 ? 1 : 2;
  return o.apply(o.a(site, hole_mode) * o.a_dag(site, 0), state);
}

std::vector<PathStep> plaquette_loop(const Lattice& lat, PlaquetteAddress p) {
  Direction eta{p.plane.eta, +1}, zeta{p.plane.zeta, +1};
  int x = p.site, xe = lat.shift(x, eta), xez = lat.shift(xe, zeta), xz = lat.shift(x, zeta);
  return {{x, eta}, {xe, zeta}, {xez, -eta}, {xz, -zeta}};
}

std::vector<PathStep> reversed_path(const Lattice& lat, const std::vector<PathStep>& path) {
  std::vector<PathStep> out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back({lat.shift(it->site, it->dir), -it->dir});
  return out;
}

}  // namespace qedqca
