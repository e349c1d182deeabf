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

#include "qedqca/lattice.hpp"

#include <sstream>
#include <stdexcept>

namespace qedqca {

namespace {
const char* kAxisNames[3] = {"mu", "nu", "kappa"};
}

std::string Direction::str() const {
  return std::string(sign > 0 ? "" : "-") + kAxisNames[axis];
}

Lattice::Lattice(int spatial_dim, std::vector<int> dims, int k)
    : dim_(spatial_dim), dims_(std::move(dims)), k_(k), sites_(1) {
  if (dim_ != 2 && dim_ != 3) {
    throw std::invalid_argument("spatial dimension must be 2 or 3");
  }
  if (static_cast<int>(dims_.size()) != dim_) {
    throw std::invalid_argument("lattice needs one extent per spatial axis");
  }
  for (int e : dims_) {
    if (e < 2) {
      throw std::invalid_argument("every lattice extent must be at least 2");
    }
    sites_ *= e;
  }
  if (k_ < 2 || k_ % 2 != 0) {
    throw std::invalid_argument(
        "gauge truncation k must be even and >= 2: half-link parity, and with it the "
        "plaquette sign bookkeeping, is only well defined on Z_k for even k");
  }
}

Coord Lattice::coord(int site) const {
  Coord c{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    c[a] = site % dims_[a];
    site /= dims_[a];
  }
  return c;
}

int Lattice::site_index(Coord c) const {
  int s = 0;
  for (int a = 0; a < dim_; ++a) {
    int v = c[a] % dims_[a];
    if (v < 0) v += dims_[a];
    s = s * dims_[a] + v;
  }
  return s;
}

int Lattice::shift(int site, Direction d, int steps) const {
  Coord c = coord(site);
  c[d.axis] += d.sign * steps;
  return site_index(c);
}

int Lattice::coord_parity(int site) const {
  Coord c = coord(site);
  return (c[0] + c[1] + c[2]) & 1;
}

std::pair<LinkId, int> Lattice::canonical_link(HalfLinkId h) const {
  if (h.dir.positive()) return {LinkId{h.site, h.dir.axis}, +1};
  return {LinkId{shift(h.site, h.dir), h.dir.axis}, -1};
}

DofId Lattice::mode_dof(int site, int j) const {
  if (j < 0 || j >= d_modes()) throw std::out_of_range("mode index out of range");
  return {site, j};
}

DofId Lattice::half_link_dof(HalfLinkId h) const {
  if (h.dir.axis < 0 || h.dir.axis >= dim_) throw std::out_of_range("direction not on lattice");
  return {h.site, d_modes() + 2 * h.dir.axis + (h.dir.positive() ? 1 : 0)};
}

HalfLinkId Lattice::half_link_of(DofId d) const {
  int slot = d.local - d_modes();
  if (slot < 0) throw std::invalid_argument("dof is a fermion mode, not a half-link");
  return {d.site, Direction{slot / 2, (slot % 2) ? +1 : -1}};
}

std::vector<Plane> Lattice::planes() const {
  if (dim_ == 2) return {{0, 1}};
  return {{0, 1}, {0, 2}, {1, 2}};
}

std::vector<PlaquetteAddress> Lattice::enumerate_plaquettes(Plane plane, Parity parity) const {
  if (plane.eta < 0 || plane.zeta >= dim_ || plane.eta >= plane.zeta) {
    throw std::invalid_argument("invalid plaquette plane for this dimension");
  }
  std::vector<PlaquetteAddress> out;
  int want = parity == Parity::kEven ? 0 : 1;
  for (int s = 0; s < sites_; ++s) {
    if (coord_parity(s) == want) out.push_back({s, plane});
  }
  return out;
}

std::vector<PlaquetteAddress> Lattice::all_plaquettes() const {
  std::vector<PlaquetteAddress> out;
  for (Plane p : planes()) {
    for (Parity par : {Parity::kEven, Parity::kOdd}) {
      auto v = enumerate_plaquettes(p, par);
      out.insert(out.end(), v.begin(), v.end());
    }
  }
  return out;
}

std::string Lattice::site_str(int site) const {
  Coord c = coord(site);
  std::ostringstream os;
  for (int a = 0; a < dim_; ++a) os << (a ? "," : "") << c[a];
  return os.str();
}

int Lattice::parse_site(const std::string& text) const {
  Coord c{0, 0, 0};
  std::istringstream is(text);
  std::string part;
  int a = 0;
  while (std::getline(is, part, ',')) {
    if (a >= dim_) throw std::invalid_argument("too many coordinates in site '" + text + "'");
    std::size_t used = 0;
    c[a] = std::stoi(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad coordinate in site '" + text + "'");
    if (c[a] < 0 || c[a] >= dims_[a]) {
      throw std::invalid_argument("site '" + text + "' is outside the lattice");
    }
    ++a;
  }
  if (a != dim_) throw std::invalid_argument("site '" + text + "' needs " + std::to_string(dim_) + " coordinates");
  return site_index(c);
}

std::strong_ordering jw_compare(const Lattice& lat, DofId a, DofId b) {
  return lat.jw_rank(a) <=> lat.jw_rank(b);
}

}  // namespace qedqca
