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

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/inlined_vector.h"
#include "qedqca/lattice.hpp"

namespace qedqca {

using cplx = std::complex<double>;

class BasisConfig {
 public:
  BasisConfig() = default;
  explicit BasisConfig(int word_count) : words_(word_count, 0) {}

  bool bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set_bit(int i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  void flip_bit(int i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  // Fields never straddle a word boundary (ConfigLayout guarantees it).
  std::uint32_t field(int offset, int width) const {
    return static_cast<std::uint32_t>((words_[offset >> 6] >> (offset & 63)) & ((std::uint64_t{1} << width) - 1));
  }
  void set_field(int offset, int width, std::uint32_t v) {
    std::uint64_t m = ((std::uint64_t{1} << width) - 1) << (offset & 63);
    std::uint64_t& w = words_[offset >> 6];
    w = (w & ~m) | ((static_cast<std::uint64_t>(v) << (offset & 63)) & m);
  }

  const absl::InlinedVector<std::uint64_t, 2>& words() const { return words_; }
  bool operator==(const BasisConfig& o) const { return words_ == o.words_; }
  bool operator<(const BasisConfig& o) const {
    return std::lexicographical_compare(words_.rbegin(), words_.rend(), o.words_.rbegin(), o.words_.rend());
  }

 private:
  absl::InlinedVector<std::uint64_t, 2> words_;
};

// Deterministic across processes. Iteration order of the map is still not reproducible
// (the table salts probes), so reductions go through SparseState::sorted().
struct ConfigHash {
  std::size_t operator()(const BasisConfig& c) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : c.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ull;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

// Packed layout: fermion bit (site, j) at site*d + j, then one b-bit field per canonical link.
class ConfigLayout {
 public:
  explicit ConfigLayout(const Lattice& lat);

  int fermion_bit(int site, int j) const { return site * d_ + j; }
  int link_offset(int link) const { return link_offsets_[link]; }
  int link_offset(LinkId l) const { return link_offsets_[l.site * dim_ + l.axis]; }
  int link_width() const { return width_; }
  int word_count() const { return words_; }
  int fermion_bit_count() const { return fermion_bits_; }
  int k() const { return k_; }

  BasisConfig empty() const { return BasisConfig(words_); }
  bool occupied(const BasisConfig& c, int site, int j) const { return c.bit(fermion_bit(site, j)); }
  int link_value(const BasisConfig& c, int link) const { return static_cast<int>(c.field(link_offsets_[link], width_)); }
  void set_link_value(BasisConfig& c, int link, int v) const;
  void add_link_value(BasisConfig& c, int link, int delta) const;

  // Bit whose value is the Z-parity of the dof: the occupation bit, or the low bit of the stored residue.
  int parity_bit(DofId d) const;

  BasisConfig encode(const std::vector<int>& occupations, const std::vector<int>& link_values) const;
  void decode(const BasisConfig& c, std::vector<int>& occupations, std::vector<int>& link_values) const;

  std::string to_hex(const BasisConfig& c) const;
  BasisConfig from_hex(const std::string& hex) const;

  const Lattice& lattice() const { return lat_; }

 private:
  Lattice lat_;
  int dim_, d_, k_, width_, fermion_bits_, words_;
  std::vector<int> link_offsets_;
};

// Symmetric representative of a residue, in {-k/2, ..., k/2 - 1}.
inline int symmetric_rep(int residue, int k) { return residue >= k / 2 ? residue - k : residue; }
// Electric value on a half-link: sign times the symmetric representative of the stored residue.
int half_link_electric(const ConfigLayout& layout, const BasisConfig& c, HalfLinkId h);

int interval_parity(const ConfigLayout& layout, const BasisConfig& c, DofId lo, DofId hi);

class SparseState {
 public:
  using Map = absl::flat_hash_map<BasisConfig, cplx, ConfigHash>;

  explicit SparseState(const Lattice& lat, double tolerance = 1e-14);

  const Lattice& lattice() const { return layout_.lattice(); }
  const ConfigLayout& layout() const { return layout_; }
  double tolerance() const { return tol_; }

  void add(const BasisConfig& c, cplx amp);
  void set(const BasisConfig& c, cplx amp);
  cplx amplitude(const BasisConfig& c) const;
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  void clear() { map_.clear(); }
  void prune();
  void scale(cplx s);

  Map& entries() { return map_; }
  const Map& entries() const { return map_; }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  // Entries sorted by config; used wherever a reduction must not depend on hash order.
  std::vector<std::pair<BasisConfig, cplx>> sorted() const;

  double norm() const;

 private:
  ConfigLayout layout_;
  double tol_;
  Map map_;
};

cplx inner(const SparseState& a, const SparseState& b);
SparseState axpy(cplx alpha, const SparseState& x, const SparseState& y);
double norm(const SparseState& s);
double distance(const SparseState& a, const SparseState& b);

struct Sector {
  std::vector<int> f;  // per site, reduced to 0..k-1
  double weight = 0;
};

struct SectorReport {
  std::vector<Sector> sectors;  // sorted by decreasing weight
  bool pure() const { return sectors.size() == 1; }
};

std::vector<int> config_sector(const ConfigLayout& layout, const BasisConfig& c);
SectorReport sector_map(const SparseState& state);

void write_snapshot(std::ostream& os, const SparseState& state);
SparseState read_snapshot(std::istream& is, const Lattice& lat);

}  // namespace qedqca
