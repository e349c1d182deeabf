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

#include <random>

#include "qedqca/fock.hpp"
#include "qedqca/jw_oracle.hpp"

namespace qedqca::tu {

inline BasisConfig random_config(const ConfigLayout& layout, std::mt19937_64& rng) {
  const Lattice& lat = layout.lattice();
  std::vector<int> occ(layout.fermion_bit_count()), vals(lat.link_count());
  for (int& o : occ) o = std::uniform_int_distribution<int>(0, 1)(rng);
  for (int& v : vals) v = std::uniform_int_distribution<int>(0, lat.k() - 1)(rng);
  return layout.encode(occ, vals);
}

// Random link values with at most max_particles fermions.
inline BasisConfig random_sparse_config(const ConfigLayout& layout, int max_particles, std::mt19937_64& rng) {
  BasisConfig c = random_config(layout, rng);
  for (int b = 0; b < layout.fermion_bit_count(); ++b) c.set_bit(b, false);
  int n = std::uniform_int_distribution<int>(0, max_particles)(rng);
  std::uniform_int_distribution<int> pick(0, layout.fermion_bit_count() - 1);
  for (int i = 0; i < n; ++i) c.set_bit(pick(rng), true);
  return c;
}

inline SparseState random_sparse_state(const Lattice& lat, int n_configs, int max_particles, std::mt19937_64& rng) {
  SparseState s(lat);
  std::normal_distribution<double> g;
  for (int i = 0; i < n_configs; ++i) s.add(random_sparse_config(s.layout(), max_particles, rng), cplx(g(rng), g(rng)));
  s.scale(1.0 / s.norm());
  return s;
}

inline SparseState random_state(const Lattice& lat, int n_configs, std::mt19937_64& rng) {
  SparseState s(lat);
  std::normal_distribution<double> g;
  for (int i = 0; i < n_configs; ++i) s.add(random_config(s.layout(), rng), cplx(g(rng), g(rng)));
  s.scale(1.0 / s.norm());
  return s;
}

inline SparseState basis_state(const Lattice& lat, const BasisConfig& c) {
  SparseState s(lat);
  s.add(c, 1.0);
  return s;
}

// Largest amplitude difference between a fast-path state and an oracle vector.
inline double max_diff(const Oracle& o, const SparseState& fast, const OracleVector& ref) {
  SparseState r(fast.lattice());
  for (const auto& [c, v] : ref) r.add(o.restrict(fast.layout(), c), v);
  double d = 0;
  for (const auto& [c, v] : fast) d = std::max(d, std::abs(v - r.amplitude(c)));
  for (const auto& [c, v] : r) d = std::max(d, std::abs(v - fast.amplitude(c)));
  return d;
}

}  // namespace qedqca::tu
