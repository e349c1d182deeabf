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

#include "qedqca/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qedqca {

ConfigLayout::ConfigLayout(const Lattice& lat)
    : lat_(lat), dim_(lat.spatial_dim()), d_(lat.d_modes()), k_(lat.k()) {
  width_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(k_ - 1))));
  fermion_bits_ = lat.site_count() * d_;
  int off = fermion_bits_;
  link_offsets_.resize(lat.link_count());
  for (int l = 0; l < lat.link_count(); ++l) {
    if ((off & 63) + width_ > 64) off = (off | 63) + 1;
    link_offsets_[l] = off;
    off += width_;
  }
  words_ = (off + 63) / 64;
}

void ConfigLayout::set_link_value(BasisConfig& c, int link, int v) const {
  if (v < 0 || v >= k_) throw std::out_of_range("link value must lie in 0..k-1");
  c.set_field(link_offsets_[link], width_, static_cast<std::uint32_t>(v));
}

void ConfigLayout::add_link_value(BasisConfig& c, int link, int delta) const {
  int v = (link_value(c, link) + delta) % k_;
  if (v < 0) v += k_;
  c.set_field(link_offsets_[link], width_, static_cast<std::uint32_t>(v));
}

int ConfigLayout::parity_bit(DofId d) const {
  if (lat_.is_mode(d)) return fermion_bit(d.site, d.local);
  auto [link, sign] = lat_.canonical_link(lat_.half_link_of(d));
  (void)sign;
  return link_offset(link);
}

BasisConfig ConfigLayout::encode(const std::vector<int>& occ, const std::vector<int>& vals) const {
  if (static_cast<int>(occ.size()) != fermion_bits_ || static_cast<int>(vals.size()) != lat_.link_count()) {
    throw std::invalid_argument("encode: wrong number of occupations or link values");
  }
  BasisConfig c = empty();
  for (int i = 0; i < fermion_bits_; ++i) {
    if (occ[i] != 0 && occ[i] != 1) throw std::out_of_range("occupation must be 0 or 1");
    c.set_bit(i, occ[i]);
  }
  for (int l = 0; l < lat_.link_count(); ++l) set_link_value(c, l, vals[l]);
  return c;
}

void ConfigLayout::decode(const BasisConfig& c, std::vector<int>& occ, std::vector<int>& vals) const {
  occ.assign(fermion_bits_, 0);
  vals.assign(lat_.link_count(), 0);
  for (int i = 0; i < fermion_bits_; ++i) occ[i] = c.bit(i);
  for (int l = 0; l < lat_.link_count(); ++l) vals[l] = link_value(c, l);
}

std::string ConfigLayout::to_hex(const BasisConfig& c) const {
  std::vector<bool> bits;
  for (int i = 0; i < fermion_bits_; ++i) bits.push_back(c.bit(i));
  for (int l = 0; l < lat_.link_count(); ++l) {
    int v = link_value(c, l);
    for (int b = 0; b < width_; ++b) bits.push_back((v >> b) & 1);
  }
  int digits = (static_cast<int>(bits.size()) + 3) / 4;
  std::string out(digits, '0');
  for (int d = 0; d < digits; ++d) {
    int nib = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t i = 4 * d + b;
      if (i < bits.size() && bits[i]) nib |= 1 << b;
    }
    out[digits - 1 - d] = "0123456789abcdef"[nib];
  }
  return out;
}

BasisConfig ConfigLayout::from_hex(const std::string& hex) const {
  int nbits = fermion_bits_ + lat_.link_count() * width_;
  int digits = (nbits + 3) / 4;
  if (static_cast<int>(hex.size()) != digits) throw std::invalid_argument("snapshot config has wrong length");
  std::vector<bool> bits(4 * digits);
  for (int d = 0; d < digits; ++d) {
    char ch = static_cast<char>(std::tolower(hex[digits - 1 - d]));
    int nib;
    if (ch >= '0' && ch <= '9') nib = ch - '0';
    else if (ch >= 'a' && ch <= 'f') nib = ch - 'a' + 10;
    else throw std::invalid_argument("snapshot config is not hexadecimal");
    for (int b = 0; b < 4; ++b) bits[4 * d + b] = (nib >> b) & 1;
  }
  BasisConfig c = empty();
  int i = 0;
  for (; i < fermion_bits_; ++i) c.set_bit(i, bits[i]);
  for (int l = 0; l < lat_.link_count(); ++l) {
    int v = 0;
    for (int b = 0; b < width_; ++b) v |= bits[i++] << b;
    set_link_value(c, l, v);
  }
  for (; i < static_cast<int>(bits.size()); ++i) {
    if (bits[i]) throw std::invalid_argument("snapshot config has bits past the end");
  }
  return c;
}

int half_link_electric(const ConfigLayout& layout, const BasisConfig& c, HalfLinkId h) {
  const Lattice& lat = layout.lattice();
  auto [link, sign] = lat.canonical_link(h);
  return sign * symmetric_rep(layout.link_value(c, lat.link_index(link)), layout.k());
}

int interval_parity(const ConfigLayout& layout, const BasisConfig& c, DofId lo, DofId hi) {
  const Lattice& lat = layout.lattice();
  int a = lat.jw_rank(lo), b = lat.jw_rank(hi);
  if (a > b) std::swap(a, b);
  int p = 0;
  for (int r = a; r < b; ++r) p ^= c.bit(layout.parity_bit(lat.dof_at_rank(r)));
  return p ? -1 : +1;
}

SparseState::SparseState(const Lattice& lat, double tolerance) : layout_(lat), tol_(tolerance) {}

void SparseState::add(const BasisConfig& c, cplx amp) {
  auto [it, inserted] = map_.try_emplace(c, amp);
  if (!inserted) it->second += amp;
}

void SparseState::set(const BasisConfig& c, cplx amp) { map_[c] = amp; }

cplx SparseState::amplitude(const BasisConfig& c) const {
  auto it = map_.find(c);
  return it == map_.end() ? cplx{} : it->second;
}

void SparseState::prune() {
  absl::erase_if(map_, [this](const auto& kv) { return std::abs(kv.second) < tol_; });
}

void SparseState::scale(cplx s) {
  for (auto& kv : map_) kv.second *= s;
}

std::vector<std::pair<BasisConfig, cplx>> SparseState::sorted() const {
  std::vector<std::pair<BasisConfig, cplx>> v(map_.begin(), map_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

double SparseState::norm() const {
  double s = 0;
  for (const auto& [c, a] : sorted()) s += std::norm(a);
  return std::sqrt(s);
}

cplx inner(const SparseState& a, const SparseState& b) {
  cplx s{};
  for (const auto& [c, x] : a.sorted()) s += std::conj(x) * b.amplitude(c);
  return s;
}

SparseState axpy(cplx alpha, const SparseState& x, const SparseState& y) {
  SparseState out = y;
  if (alpha != cplx{}) {
    for (const auto& [c, a] : x) out.add(c, alpha * a);
  }
  out.prune();
  return out;
}

double norm(const SparseState& s) { return s.norm(); }

double distance(const SparseState& a, const SparseState& b) { return axpy(-1.0, a, b).norm(); }

std::vector<int> config_sector(const ConfigLayout& layout, const BasisConfig& c) {
  const Lattice& lat = layout.lattice();
  int k = lat.k();
  std::vector<int> f(lat.site_count(), 0);
  for (int x = 0; x < lat.site_count(); ++x) {
    int s = 0;
    for (int j = 0; j < lat.d_modes(); ++j) s += layout.occupied(c, x, j);
    for (int a = 0; a < lat.spatial_dim(); ++a) {
      for (int sg : {-1, +1}) s += half_link_electric(layout, c, {x, Direction{a, sg}});
    }
    f[x] = ((s % k) + k) % k;
  }
  return f;
}

SectorReport sector_map(const SparseState& state) {
  std::map<std::vector<int>, double> w;
  for (const auto& [c, a] : state.sorted()) w[config_sector(state.layout(), c)] += std::norm(a);
  SectorReport r;
  for (auto& [f, weight] : w) r.sectors.push_back({f, weight});
  std::stable_sort(r.sectors.begin(), r.sectors.end(),
                   [](const Sector& x, const Sector& y) { return x.weight > y.weight; });
  return r;
}

void write_snapshot(std::ostream& os, const SparseState& state) {
  os.precision(17);
  for (const auto& [c, a] : state.sorted()) {
    os << state.layout().to_hex(c) << ", " << a.real() << ", " << a.imag() << "\n";
  }
}

SparseState read_snapshot(std::istream& is, const Lattice& lat) {
  SparseState s(lat);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string hex, re, im;
    if (!std::getline(ls, hex, ',') || !std::getline(ls, re, ',') || !std::getline(ls, im)) {
      throw std::invalid_argument("snapshot line " + std::to_string(lineno) + " is not 'config_hex, re, im'");
    }
    auto trim = [](std::string t) {
      t.erase(0, t.find_first_not_of(" \t"));
      t.erase(t.find_last_not_of(" \t\r") + 1);
      return t;
    };
    s.add(s.layout().from_hex(trim(hex)), cplx(std::stod(re), std::stod(im)));
  }
  return s;
}

}  // namespace qedqca
