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

#include "qedqca/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qedqca {

namespace {
const cplx kI(0, 1);
}

Eigen::Matrix4cd extend_one_particle_gate(const Eigen::Matrix2cd& m) {
  if (((m.adjoint() * m) - Eigen::Matrix2cd::Identity()).norm() > 1e-10) {
    throw std::invalid_argument("extend_one_particle_gate: matrix is not unitary");
  }
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  g(0, 0) = 1;
  g.block<2, 2>(1, 1) = m;
  g(3, 3) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return g;
}

Eigen::Matrix2cd qw_mass2d(double eps_m) {
  double c = std::cos(eps_m), s = std::sin(eps_m);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return m;
}

Eigen::Matrix2cd qw_swap() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd qw_hadamard() {
  Eigen::Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Eigen::Matrix2cd qw_fgate() {
  Eigen::Matrix2cd m;
  m << 1, -kI, kI, -1;
  return m / std::sqrt(2.0);
}

bool is_3d_kind(OnsiteKind kind) {
  switch (kind) {
    case OnsiteKind::kMass3d:
    case OnsiteKind::kSwap3d:
    case OnsiteKind::kHKappa:
    case OnsiteKind::kHMu:
    case OnsiteKind::kHNu:
      return true;
    default:
      return false;
  }
}

Matrix qw_onsite(OnsiteKind kind, GateParams p) {
  auto direct_sum = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix m = Matrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = a;
    m.block(2, 2, 2, 2) = b;
    return m;
  };
  Matrix hk = Matrix::Zero(4, 4);
  hk(0, 0) = hk(2, 2) = 1;
  hk(1, 3) = hk(3, 1) = 1;
  switch (kind) {
    case OnsiteKind::kMass2d: return qw_mass2d(p.epsilon * p.mass);
    case OnsiteKind::kSwap: return qw_swap();
    case OnsiteKind::kHadamardMu: return qw_hadamard();
    case OnsiteKind::kFGate: return qw_fgate();
    case OnsiteKind::kMass3d: {
      double c = std::cos(p.epsilon * p.mass), s = std::sin(p.epsilon * p.mass);
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = c;
      m(0, 2) = m(1, 3) = -s;
      m(2, 0) = m(3, 1) = s;
      return m;
    }
    case OnsiteKind::kSwap3d: {
      Matrix m = Matrix::Zero(4, 4);
      m(2, 0) = m(3, 1) = m(0, 2) = m(1, 3) = 1;
      return m;
    }
    case OnsiteKind::kHKappa: return hk;
    case OnsiteKind::kHMu: return hk * direct_sum(qw_hadamard(), qw_hadamard());
    case OnsiteKind::kHNu: return hk * direct_sum(qw_fgate(), qw_fgate());
  }
  throw std::invalid_argument("unknown on-site gate kind");
}

Matrix embed_pair(const Eigen::Matrix4cd& g, int lo, int n_modes) {
  int dim = 1 << n_modes;
  Matrix m = Matrix::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    int in = ((col >> lo) & 1) | (((col >> (lo + 1)) & 1) << 1);
    int rest = col & ~(3 << lo);
    for (int out = 0; out < 4; ++out) {
      if (g(out, in) == cplx{}) continue;
      int row = rest | ((out & 1) << lo) | (((out >> 1) & 1) << (lo + 1));
      m(row, col) += g(out, in);
    }
  }
  return m;
}

Matrix one_particle_block(const Matrix& m, int n_modes) {
  Matrix b(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i) {
    for (int j = 0; j < n_modes; ++j) b(i, j) = m(1 << i, 1 << j);
  }
  return b;
}

Matrix onsite_matrix(OnsiteKind kind, GateParams p) {
  Eigen::Matrix4cd s = extend_one_particle_gate(qw_swap());
  switch (kind) {
    case OnsiteKind::kMass2d: return extend_one_particle_gate(qw_mass2d(p.epsilon * p.mass));
    case OnsiteKind::kSwap: return s;
    case OnsiteKind::kHadamardMu: return extend_one_particle_gate(qw_hadamard());
    case OnsiteKind::kFGate: return extend_one_particle_gate(qw_fgate());
    default: break;
  }
  Matrix s_mid = embed_pair(s, 1, 4);
  auto both = [](const Eigen::Matrix4cd& g) { return Matrix(embed_pair(g, 0, 4) * embed_pair(g, 2, 4)); };
  Matrix hk = s_mid * embed_pair(s, 2, 4) * s_mid;
  switch (kind) {
    case OnsiteKind::kMass3d:
      return s_mid * both(extend_one_particle_gate(qw_mass2d(p.epsilon * p.mass))) * s_mid;
    case OnsiteKind::kSwap3d: return s_mid * both(s) * s_mid;
    case OnsiteKind::kHKappa: return hk;
    case OnsiteKind::kHMu: return hk * both(extend_one_particle_gate(qw_hadamard()));
    case OnsiteKind::kHNu: return hk * both(extend_one_particle_gate(qw_fgate()));
    default: break;
  }
  throw std::invalid_argument("unknown on-site gate kind");
}

LocalGate onsite_gate(const Lattice& lat, int site, OnsiteKind kind, GateParams params) {
  if (is_3d_kind(kind) != (lat.spatial_dim() == 3)) {
    throw std::invalid_argument("on-site gate kind does not match the lattice dimension");
  }
  LocalGate g;
  for (int j = 0; j < lat.d_modes(); ++j) g.support.push_back(lat.mode_dof(site, j));
  g.matrix = onsite_matrix(kind, params);
  return g;
}

LocalGate pair_gate(const Lattice& lat, int site, int lo_mode, const Eigen::Matrix4cd& m) {
  LocalGate g;
  g.support = {lat.mode_dof(site, lo_mode), lat.mode_dof(site, lo_mode + 1)};
  g.matrix = m;
  return g;
}

LocalGate hop_gate(const Lattice& lat, int site, int axis, int from_mode, int to_mode) {
  if (axis < 0 || axis >= lat.spatial_dim()) throw std::invalid_argument("direction is not a lattice direction");
  Direction eta{axis, +1};
  int y = lat.shift(site, eta);
  LocalGate g;
  g.support = {lat.mode_dof(site, from_mode), lat.mode_dof(y, to_mode)};
  g.matrix = Matrix::Zero(4, 4);
  g.matrix(0, 0) = 1;
  g.matrix(2, 1) = 1;
  g.matrix(1, 2) = 1;
  g.matrix(3, 3) = -1;
  g.gauge_action = GaugeAction{LinkId{site, axis}, +1};
  // Z-strings between each hop mode and its end of the link, hop modes themselves excluded.
  int end_x = lat.half_link_dof({site, eta}).local;
  for (int l = from_mode + 1; l < end_x; ++l) g.sign_rule.push_back({site, l});
  int end_y = lat.half_link_dof({y, -eta}).local;
  for (int l = to_mode + 1; l < end_y; ++l) g.sign_rule.push_back({y, l});
  return g;
}

std::vector<LocalGate> transport_gate(const Lattice& lat, int site, int axis) {
  if (lat.spatial_dim() == 2) return {hop_gate(lat, site, axis, 1, 0)};
  Eigen::Matrix4cd s = extend_one_particle_gate(qw_swap());
  int y = lat.shift(site, Direction{axis, +1});
  LocalGate t = hop_gate(lat, site, axis, 3, 0);
  return {t, pair_gate(lat, site, 2, s), pair_gate(lat, y, 0, s), t};
}

bool is_unitary(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

namespace {

struct Column {
  std::vector<std::pair<int, cplx>> entries;
  bool identity = false;
};

}  // namespace

void apply_gate(const LocalGate& g, SparseState& state) {
  const ConfigLayout& layout = state.layout();
  const Lattice& lat = layout.lattice();
  int n = static_cast<int>(g.support.size());
  int dim = 1 << n;
  if (g.matrix.rows() != dim || g.matrix.cols() != dim) throw std::invalid_argument("gate matrix does not match support");

  std::vector<int> bits(n);
  for (int i = 0; i < n; ++i) bits[i] = layout.parity_bit(g.support[i]);
  std::vector<Column> cols(dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      if (std::abs(g.matrix(r, c)) > 1e-15) cols[c].entries.push_back({r, g.matrix(r, c)});
    }
    cols[c].identity = cols[c].entries.size() == 1 && cols[c].entries[0].first == c &&
                       cols[c].entries[0].second == cplx(1, 0);
  }
  int link = -1, delta = 0;
  std::vector<int> sign_bits;
  if (g.gauge_action) {
    link = lat.link_index(g.gauge_action->link);
    delta = g.gauge_action->delta;
    for (DofId d : g.sign_rule) sign_bits.push_back(layout.parity_bit(d));
  }
  auto local_index = [&](const BasisConfig& c) {
    int idx = 0;
    for (int i = 0; i < n; ++i) idx |= c.bit(bits[i]) << i;
    return idx;
  };

  auto& map = state.entries();
  std::vector<std::pair<BasisConfig, cplx>> moved;
  for (const auto& kv : map) {
    if (!cols[local_index(kv.first)].identity) moved.push_back(kv);
  }
  if (moved.empty()) return;
  // An output collecting three or more terms needs a fixed summation order to be reproducible.
  std::vector<int> fan_in(dim);
  for (int c = 0; c < dim; ++c) {
    if (cols[c].identity) ++fan_in[c];
    else for (const auto& e : cols[c].entries) ++fan_in[e.first];
  }
  if (*std::max_element(fan_in.begin(), fan_in.end()) > 2)
    std::sort(moved.begin(), moved.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& kv : moved) map.erase(kv.first);

  std::vector<BasisConfig> touched;
  touched.reserve(moved.size() * 2);
  for (const auto& [cfg, amp] : moved) {
    int in = local_index(cfg);
    int parity = 0;
    for (int b : sign_bits) parity ^= cfg.bit(b);
    double sign = parity ? -1.0 : 1.0;
    for (const auto& [out, coef] : cols[in].entries) {
      BasisConfig c2 = cfg;
      for (int i = 0; i < n; ++i) c2.set_bit(bits[i], (out >> i) & 1);
      cplx a = amp * coef;
      if (link >= 0 && in != out) {
        if (in == 1 && out == 2) layout.add_link_value(c2, link, delta);
        else if (in == 2 && out == 1) layout.add_link_value(c2, link, -delta);
        a *= sign;
      }
      state.add(c2, a);
      touched.push_back(std::move(c2));
    }
  }
  for (const auto& c : touched) {
    auto it = map.find(c);
    if (it != map.end() && std::abs(it->second) < state.tolerance()) map.erase(it);
  }
}

void apply_gates(const std::vector<LocalGate>& gates, SparseState& state) {
  for (const auto& g : gates) apply_gate(g, state);
}

}  // namespace qedqca
