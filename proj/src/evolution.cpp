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

#include "qedqca/evolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qedqca/jw_oracle.hpp"

namespace qedqca {

namespace {
const cplx kI(0, 1);
}

double StepConfig::locked_epsilon(int k, double g_electric) {
  return std::sqrt(4 * std::numbers::pi / (k * g_electric * g_electric));
}

StepConfig StepConfig::locked(int k, double g_electric, double mass, double g_magnetic, MagneticFormulation f) {
  StepConfig c;
  c.k = k;
  c.g_electric = g_electric;
  c.epsilon = locked_epsilon(k, g_electric);
  c.mass = mass;
  c.g_magnetic = g_magnetic;
  c.coupling_mode = CouplingMode::kLocked;
  c.magnetic_formulation = f;
  c.validate();
  return c;
}

StepConfig StepConfig::free(double epsilon, int k, double g_electric, double mass, double g_magnetic,
                            MagneticFormulation f) {
  StepConfig c;
  c.epsilon = epsilon;
  c.k = k;
  c.g_electric = g_electric;
  c.mass = mass;
  c.g_magnetic = g_magnetic;
  c.coupling_mode = CouplingMode::kFree;
  c.magnetic_formulation = f;
  c.validate();
  return c;
}

void StepConfig::validate() const {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (k < 2 || k % 2) throw std::invalid_argument("k must be even and >= 2");
  if (coupling_mode == CouplingMode::kLocked) {
    double lhs = epsilon * epsilon * g_electric * g_electric / 2, rhs = 2 * std::numbers::pi / k;
    if (std::abs(lhs - rhs) > 1e-12 * rhs) {
      throw std::invalid_argument("locked coupling requires eps^2 g_E^2 / 2 = 2 pi / k");
    }
  }
}

std::vector<Layer> fermionic_layers(const Lattice& lat, const StepConfig& cfg) {
  GateParams p{cfg.epsilon, cfg.mass};
  int n = lat.site_count();
  auto onsite_layer = [&](const std::string& name, OnsiteKind kind, bool adjoint) {
    Layer l{name, {}};
    for (int x = 0; x < n; ++x) {
      LocalGate g = onsite_gate(lat, x, kind, p);
      if (adjoint) g.matrix = g.matrix.adjoint().eval();
      l.gates.push_back(std::move(g));
    }
    return l;
  };
  auto transport_layer = [&](const std::string& name, int axis) {
    Layer l{name, {}};
    for (int x = 0; x < n; ++x) {
      for (auto& g : transport_gate(lat, x, axis)) l.gates.push_back(std::move(g));
    }
    return l;
  };
  std::vector<Layer> layers;
  if (lat.spatial_dim() == 2) {
    layers.push_back(onsite_layer("basis_mu_dag", OnsiteKind::kHadamardMu, true));
    layers.push_back(onsite_layer("swap_mu", OnsiteKind::kSwap, false));
    layers.push_back(transport_layer("transport_mu", 0));
    layers.push_back(onsite_layer("basis_mu", OnsiteKind::kHadamardMu, false));
    layers.push_back(onsite_layer("swap_nu", OnsiteKind::kSwap, false));
    layers.push_back(transport_layer("transport_nu", 1));
    layers.push_back(onsite_layer("mass", OnsiteKind::kMass2d, false));
    return layers;
  }
  const char* names[3] = {"mu", "nu", "kappa"};
  const OnsiteKind basis[3] = {OnsiteKind::kHMu, OnsiteKind::kHNu, OnsiteKind::kHKappa};
  for (int axis : {2, 1, 0}) {
    std::string a = names[axis];
    layers.push_back(onsite_layer("basis_" + a, basis[axis], false));
    layers.push_back(onsite_layer("swap_" + a, OnsiteKind::kSwap3d, false));
    layers.push_back(transport_layer("transport_" + a, axis));
    layers.push_back(onsite_layer("basis_" + a + "_dag", basis[axis], true));
  }
  layers.push_back(onsite_layer("mass", OnsiteKind::kMass3d, false));
  return layers;
}

void fermionic_step(SparseState& state, const StepConfig& cfg) {
  for (const Layer& l : fermionic_layers(state.lattice(), cfg)) apply_gates(l.gates, state);
}

void electric_step(SparseState& state, const StepConfig& cfg) {
  const ConfigLayout& layout = state.layout();
  const Lattice& lat = state.lattice();
  if (lat.k() != cfg.k) throw std::invalid_argument("step config k differs from the lattice k");
  int links = lat.link_count(), k = cfg.k;
  double coef = cfg.epsilon * cfg.epsilon * cfg.g_electric * cfg.g_electric / 2;
  for (auto& [c, amp] : state.entries()) {
    if (cfg.coupling_mode == CouplingMode::kLocked) {
      long s = 0;
      for (int l = 0; l < links; ++l) {
        long v = layout.link_value(c, l);
        s = (s + v * v) % k;
      }
      if (s) amp *= std::exp(kI * (2 * std::numbers::pi * static_cast<double>(s) / k));
    } else {
      double s = 0;
      for (int l = 0; l < links; ++l) {
        double v = symmetric_rep(layout.link_value(c, l), k);
        s += v * v;
      }
      if (s != 0) amp *= std::exp(kI * (coef * s));
    }
  }
}

PlaquetteBlock plaquette_block(const Lattice& lat, PlaquetteAddress p) {
  Direction eta{p.plane.eta, +1}, zeta{p.plane.zeta, +1};
  int x = p.site, xe = lat.shift(x, eta), xz = lat.shift(x, zeta), xez = lat.shift(xe, zeta);
  PlaquetteBlock b;
  b.address = p;
  b.links = {lat.link_index({x, eta.axis}), lat.link_index({xe, zeta.axis}), lat.link_index({xz, eta.axis}),
             lat.link_index({x, zeta.axis})};
  // Each corner c_{y:a,b} = s+_{y:b} s_{y:a} contributes the parity of [min(a,b), max(a,b)) taken
  // before it acts, and an extra -1 when a precedes b (its own Z sees the lowered register).
  struct Corner {
    int site;
    Direction in, out;
  };
  const Corner corners[4] = {{xe, zeta, -eta}, {xez, -eta, -zeta}, {xz, -zeta, eta}, {x, eta, zeta}};
  ConfigLayout layout(lat);
  std::vector<int> count(lat.dof_count(), 0);
  int sign = -1;
  for (const Corner& c : corners) {
    DofId a = lat.half_link_dof({c.site, c.in}), bb = lat.half_link_dof({c.site, c.out});
    if (a < bb) sign = -sign;
    DofId lo = std::min(a, bb), hi = std::max(a, bb);
    for (int l = lo.local; l < hi.local; ++l) count[lat.jw_rank({c.site, l})] ^= 1;
  }
  // A half-link and its partner share one parity bit; pairs cancel.
  std::vector<int> by_bit(layout.word_count() * 64, 0);
  std::vector<DofId> first(layout.word_count() * 64);
  for (int r = 0; r < lat.dof_count(); ++r) {
    if (!count[r]) continue;
    DofId d = lat.dof_at_rank(r);
    int bit = layout.parity_bit(d);
    by_bit[bit] ^= 1;
    first[bit] = d;
  }
  for (int bit = 0; bit < static_cast<int>(by_bit.size()); ++bit) {
    if (!by_bit[bit]) continue;
    for (int l : b.links) {
      if (layout.link_offset(l) == bit) throw std::logic_error("plaquette sign depends on its own links");
    }
    b.sign_dofs.push_back(first[bit]);
  }
  b.base_sign = sign;
  return b;
}

int plaquette_sign(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c) {
  int p = 0;
  for (DofId d : b.sign_dofs) p ^= c.bit(layout.parity_bit(d));
  return p ? -b.base_sign : b.base_sign;
}

BasisConfig plaquette_shift(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c, int times) {
  BasisConfig out = c;
  for (int i = 0; i < 4; ++i) layout.add_link_value(out, b.links[i], b.deltas[i] * times);
  return out;
}

int plaquette_register(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c) {
  return layout.link_value(c, b.links[3]);
}

Eigen::MatrixXcd plaquette_tilde_gate(int k, double theta, MagneticFormulation f) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(k, k);
  if (f == MagneticFormulation::kFourier) {
    Eigen::MatrixXcd ft(k, k);
    for (int p = 0; p < k; ++p)
      for (int n = 0; n < k; ++n) ft(p, n) = std::exp(kI * (2 * std::numbers::pi * p * n / k)) / std::sqrt(double(k));
    Eigen::VectorXcd ph(k);
    for (int p = 0; p < k; ++p) ph(p) = std::exp(kI * (2 * theta * std::cos(2 * std::numbers::pi * p / k)));
    return ft.adjoint() * ph.asDiagonal() * ft;
  }
  if (f == MagneticFormulation::kQwSplit) {
    auto coin = [&](int offset) {
      Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(k, k);
      for (int j = 0; j < k / 2; ++j) {
        int a = (2 * j + offset) % k, b = (2 * j + offset + 1) % k;
        c(a, a) += std::cos(theta);
        c(b, b) += std::cos(theta);
        c(a, b) += kI * std::sin(theta);
        c(b, a) += kI * std::sin(theta);
      }
      return c;
    };
    return coin(1) * coin(0);
  }
  throw std::invalid_argument("exact formulation has no register gate");
}

void apply_plaquette_gate(SparseState& state, const PlaquetteBlock& b, const Eigen::MatrixXcd& w) {
  const ConfigLayout& layout = state.layout();
  int k = layout.k();
  // Each output sums k terms; beyond two the order must be fixed for reproducible output.
  std::vector<std::pair<BasisConfig, cplx>> old =
      k > 2 ? state.sorted() : std::vector<std::pair<BasisConfig, cplx>>(state.entries().begin(), state.entries().end());
  state.clear();
  state.entries().reserve(old.size());
  for (const auto& [c, amp] : old) {
    int n = plaquette_register(layout, b, c);
    double s = plaquette_sign(layout, b, c);
    double sn = (n & 1) ? s : 1.0;
    for (int m = 0; m < k; ++m) {
      cplx v = w(m, n);
      if (std::abs(v) < 1e-15) continue;
      double sm = (m & 1) ? s : 1.0;
      state.add(plaquette_shift(layout, b, c, m - n), amp * v * (sm * sn));
    }
  }
  state.prune();
}

void apply_plaquette_exact(SparseState& state, PlaquetteAddress p, double theta) {
  Oracle o(state.lattice());
  const ConfigLayout& layout = state.layout();
  Operator plaq = o.plaquette(p);
  // P permutes configurations in closed orbits, so the exponential is block diagonal.
  absl::flat_hash_map<BasisConfig, bool, ConfigHash> done;
  SparseState out(state.lattice(), state.tolerance());
  for (const auto& [c, a] : state.sorted()) {
    if (done.contains(c)) continue;
    OracleBasis basis = OracleBasis::closure(o, {o.embed(layout, c)}, {plaq}, kDenseCap);
    Eigen::MatrixXcd h = materialize(o, plaq, basis).to_dense();
    h = (h + h.adjoint()).eval();
    Eigen::MatrixXcd u = expi_hermitian(h, theta);
    Eigen::VectorXcd v(basis.size());
    std::vector<BasisConfig> cs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      cs.push_back(o.restrict(layout, basis[i]));
      v(i) = state.amplitude(cs.back());
      done[cs.back()] = true;
    }
    Eigen::VectorXcd w = u * v;
    for (std::size_t i = 0; i < basis.size(); ++i) out.add(cs[i], w(i));
  }
  out.prune();
  state = std::move(out);
}

void magnetic_step(SparseState& state, const StepConfig& cfg, Plane plane) {
  const Lattice& lat = state.lattice();
  double theta = cfg.magnetic_angle();
  if (theta == 0) return;
  Eigen::MatrixXcd w;
  if (cfg.magnetic_formulation != MagneticFormulation::kExact) {
    w = plaquette_tilde_gate(cfg.k, theta, cfg.magnetic_formulation);
  }
  for (Parity par : {Parity::kEven, Parity::kOdd}) {
    for (PlaquetteAddress p : lat.enumerate_plaquettes(plane, par)) {
      if (cfg.magnetic_formulation == MagneticFormulation::kExact) apply_plaquette_exact(state, p, theta);
      else apply_plaquette_gate(state, plaquette_block(lat, p), w);
    }
  }
}

void magnetic_layer(SparseState& state, const StepConfig& cfg) {
  std::vector<Plane> planes = state.lattice().planes();
  for (auto it = planes.rbegin(); it != planes.rend(); ++it) magnetic_step(state, cfg, *it);
}

void full_step(SparseState& state, const StepConfig& cfg) {
  fermionic_step(state, cfg);
  electric_step(state, cfg);
  magnetic_layer(state, cfg);
}

}  // namespace qedqca
