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

#include <array>
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace qedqca {

// Axis 0 is mu, 1 is nu, 2 is kappa.
struct Direction {
  int axis = 0;
  int sign = +1;

  Direction operator-() const { return {axis, -sign}; }
  bool positive() const { return sign > 0; }
  bool operator==(const Direction&) const = default;
  std::string str() const;
};

using Coord = std::array<int, 3>;

struct HalfLinkId {
  int site = 0;
  Direction dir;
  bool operator==(const HalfLinkId&) const = default;
};

struct LinkId {
  int site = 0;
  int axis = 0;
  bool operator==(const LinkId&) const = default;
};

// A degree of freedom: fermion mode or half-link, addressed by its site and its
// slot in the per-site order (x,0) .. (x,d-1), x:-mu, x:mu, x:-nu, x:nu, x:-kappa, x:kappa.
struct DofId {
  int site = 0;
  int local = 0;
  auto operator<=>(const DofId&) const = default;
};

struct Plane {
  int eta = 0;
  int zeta = 1;
  bool operator==(const Plane&) const = default;
};

enum class Parity { kEven, kOdd };

struct PlaquetteAddress {
  int site = 0;
  Plane plane;
  bool operator==(const PlaquetteAddress&) const = default;
};

class Lattice {
 public:
  Lattice(int spatial_dim, std::vector<int> dims, int k);

  int spatial_dim() const { return dim_; }
  const std::vector<int>& dims() const { return dims_; }
  int k() const { return k_; }
  int d_modes() const { return dim_ == 2 ? 2 : 4; }
  int site_count() const { return sites_; }
  int link_count() const { return sites_ * dim_; }
  int dofs_per_site() const { return d_modes() + 2 * dim_; }
  int dof_count() const { return sites_ * dofs_per_site(); }

  Coord coord(int site) const;
  int site_index(Coord c) const;  // wraps periodically
  int shift(int site, Direction d, int steps = 1) const;
  int coord_parity(int site) const;

  int link_index(LinkId l) const { return l.site * dim_ + l.axis; }
  LinkId link(int index) const { return {index / dim_, index % dim_}; }
  std::pair<LinkId, int> canonical_link(HalfLinkId h) const;

  DofId mode_dof(int site, int j) const;
  DofId half_link_dof(HalfLinkId h) const;
  bool is_mode(DofId d) const { return d.local < d_modes(); }
  HalfLinkId half_link_of(DofId d) const;
  int jw_rank(DofId d) const { return d.site * dofs_per_site() + d.local; }
  DofId dof_at_rank(int rank) const { return {rank / dofs_per_site(), rank % dofs_per_site()}; }

  std::vector<Plane> planes() const;
  std::vector<PlaquetteAddress> enumerate_plaquettes(Plane plane, Parity parity) const;
  std::vector<PlaquetteAddress> all_plaquettes() const;

  std::string site_str(int site) const;
  int parse_site(const std::string& text) const;

  bool operator==(const Lattice& o) const {
    return dim_ == o.dim_ && dims_ == o.dims_ && k_ == o.k_;
  }

 private:
  int dim_;
  std::vector<int> dims_;
  int k_;
  int sites_;
};

std::strong_ordering jw_compare(const Lattice& lat, DofId a, DofId b);

}  // namespace qedqca
