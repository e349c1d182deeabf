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

#include "qedqca/dense_step.hpp"

#include <numbers>
#include <stdexcept>

namespace qedqca {

namespace {

Eigen::Matrix4cd ext(const Eigen::Matrix2cd& m) { return extend_one_particle_gate(m); }

OracleGate adjoint_gate(OracleGate g) {
  OracleGate out;
  for (auto it = g.rbegin(); it != g.rend(); ++it) out.push_back(it->adjoint());
  return out;
}

}  // namespace

OracleGate oracle_onsite_gate(const Oracle& o, int site, OnsiteKind kind, GateParams p, bool adjoint) {
  Eigen::Matrix4cd s = ext(qw_swap());
  OracleGate g;
  auto both = [&](const Eigen::Matrix4cd& m) {
    g.push_back(o.pair_gate(site, 0, m));
    g.push_back(o.pair_gate(site, 2, m));
  };
  auto hk = [&] {
    g.push_back(o.pair_gate(site, 1, s));
    g.push_back(o.pair_gate(site, 2, s));
    g.push_back(o.pair_gate(site, 1, s));
  };
  switch (kind) {
    case OnsiteKind::kMass2d: g.push_back(o.pair_gate(site, 0, ext(qw_mass2d(p.epsilon * p.mass)))); break;
    case OnsiteKind::kSwap: g.push_back(o.pair_gate(site, 0, s)); break;
    case OnsiteKind::kHadamardMu: g.push_back(o.pair_gate(site, 0, ext(qw_hadamard()))); break;
    case OnsiteKind::kFGate: g.push_back(o.pair_gate(site, 0, ext(qw_fgate()))); break;
    case OnsiteKind::kMass3d:
      g.push_back(o.pair_gate(site, 1, s));
      both(ext(qw_mass2d(p.epsilon * p.mass)));
      g.push_back(o.pair_gate(site, 1, s));
      break;
    case OnsiteKind::kSwap3d:
      g.push_back(o.pair_gate(site, 1, s));
      both(s);
      g.push_back(o.pair_gate(site, 1, s));
      break;
    case OnsiteKind::kHKappa: hk(); break;
    case OnsiteKind::kHMu:
      both(ext(qw_hadamard()));
      hk();
      break;
    case OnsiteKind::kHNu:
      both(ext(qw_fgate()));
      hk();
      break;
  }
  return adjoint ? adjoint_gate(g) : g;
}

OracleGate oracle_transport_gate(const Oracle& o, int site, int axis) {
  const Lattice& lat = o.lattice();
  if (lat.spatial_dim() == 2) return {o.hop_gate(site, axis, 1, 0)};
  Eigen::Matrix4cd s = ext(qw_swap());
  int y = lat.shift(site, Direction{axis, +1});
  Operator t = o.hop_gate(site, axis, 3, 0);
  return {t, o.pair_gate(site, 2, s), o.pair_gate(y, 0, s), t};
}

std::vector<OracleLayer> oracle_fermionic_layers(const Oracle& o, const StepConfig& cfg) {
  const Lattice& lat = o.lattice();
  GateParams p{cfg.epsilon, cfg.mass};
  int n = lat.site_count();
  auto onsite = [&](const std::string& name, OnsiteKind kind, bool adjoint) {
    OracleLayer l{name, {}};
    for (int x = 0; x < n; ++x) l.gates.push_back(oracle_onsite_gate(o, x, kind, p, adjoint));
    return l;
  };
  auto transport = [&](const std::string& name, int axis) {
    OracleLayer l{name, {}};
    for (int x = 0; x < n; ++x) l.gates.push_back(oracle_transport_gate(o, x, axis));
    return l;
  };
  std::vector<OracleLayer> layers;
  if (lat.spatial_dim() == 2) {
    layers.push_back(onsite("basis_mu_dag", OnsiteKind::kHadamardMu, true));
    layers.push_back(onsite("swap_mu", OnsiteKind::kSwap, false));
    layers.push_back(transport("transport_mu", 0));
    layers.push_back(onsite("basis_mu", OnsiteKind::kHadamardMu, false));
    layers.push_back(onsite("swap_nu", OnsiteKind::kSwap, false));
    layers.push_back(transport("transport_nu", 1));
    layers.push_back(onsite("mass", OnsiteKind::kMass2d, false));
    return layers;
  }
  const char* names[3] = {"mu", "nu", "kappa"};
  const OnsiteKind basis[3] = {OnsiteKind::kHMu, OnsiteKind::kHNu, OnsiteKind::kHKappa};
  for (int axis : {2, 1, 0}) {
    std::string a = names[axis];
    layers.push_back(onsite("basis_" + a, basis[axis], false));
    layers.push_back(onsite("swap_" + a, OnsiteKind::kSwap3d, false));
    layers.push_back(transport("transport_" + a, axis));
    layers.push_back(onsite("basis_" + a + "_dag", basis[axis], true));
  }
  layers.push_back(onsite("mass", OnsiteKind::kMass3d, false));
  return layers;
}

OracleVector apply_gate(const Oracle& o, const OracleGate& g, OracleVector v) {
  for (const Operator& op : g) v = o.apply(op, v);
  return v;
}

OracleVector apply_layer(const Oracle& o, const OracleLayer& l, OracleVector v) {
  for (const OracleGate& g : l.gates) v = apply_gate(o, g, std::move(v));
  return v;
}

namespace {

DenseOperator from_columns(const OracleBasis& basis, const std::vector<OracleVector>& cols) {
  DenseOperator d;
  d.dim = static_cast<int>(basis.size());
  bool perm = true;
  for (const auto& c : cols) perm = perm && c.size() <= 1;
  auto row_of = [&](const OracleConfig& c) {
    auto i = basis.index(c);
    if (!i) throw std::out_of_range("layer maps a basis state outside the basis");
    return *i;
  };
  if (perm) {
    d.perm.emplace();
    for (const auto& c : cols) d.perm->push_back(c.empty() ? std::pair<int, cplx>{-1, {}} : std::pair{row_of(c[0].first), c[0].second});
    return d;
  }
  if (basis.size() > kDenseCap) throw std::length_error("layer dimension exceeds the dense cap");
  d.dense = Eigen::MatrixXcd::Zero(d.dim, d.dim);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [c, v] : cols[j]) d.dense(row_of(c), static_cast<int>(j)) += v;
  return d;
}

}  // namespace

std::vector<Operator> all_plaquette_operators(const Oracle& o) {
  std::vector<Operator> ops;
  for (PlaquetteAddress p : o.lattice().all_plaquettes()) ops.push_back(o.plaquette(p));
  return ops;
}

Eigen::MatrixXcd ks_hamiltonian(const Oracle& o, KsPart part, const StepConfig& cfg, const OracleBasis& basis) {
  if (basis.size() > kDenseCap) throw std::length_error("Hamiltonian dimension exceeds the dense cap");
  const Lattice& lat = o.lattice();
  int dim = static_cast<int>(basis.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  if (part == KsPart::kElectric) {
    double pre = cfg.g_electric * cfg.g_electric / 2 * cfg.epsilon;
    for (int i = 0; i < dim; ++i) {
      double s = 0;
      for (int l = 0; l < lat.link_count(); ++l) {
        LinkId id = lat.link(l);
        int e = o.electric_value(basis[i], o.rank(lat.half_link_dof({id.site, Direction{id.axis, +1}})));
        s += static_cast<double>(e) * e;
      }
      h(i, i) = pre * s;
    }
    return h;
  }
  double pre = cfg.g_magnetic * cfg.g_magnetic / 2 * cfg.epsilon;
  for (const Operator& p : all_plaquette_operators(o)) {
    Eigen::MatrixXcd m = materialize(o, p, basis).to_dense();
    h += pre * (m + m.adjoint());
  }
  return h;
}

Eigen::MatrixXcd dense_plaquette_exponential(const Oracle& o, PlaquetteAddress p, double theta,
                                             const OracleBasis& basis) {
  Eigen::MatrixXcd m = materialize(o, o.plaquette(p), basis).to_dense();
  return expi_hermitian(m + m.adjoint(), theta);
}

DenseOperator dense_step(const Oracle& o, const std::string& name, const StepConfig& cfg, const OracleBasis& basis) {
  if (name == "electric") {
    Eigen::MatrixXcd h = ks_hamiltonian(o, KsPart::kElectric, cfg, basis);
    DenseOperator d;
    d.dim = static_cast<int>(basis.size());
    d.perm.emplace();
    for (int i = 0; i < d.dim; ++i) d.perm->push_back({i, std::exp(cplx(0, 1) * (cfg.epsilon * h(i, i).real()))});
    return d;
  }
  if (name == "magnetic_exact") {
    DenseOperator d;
    d.dim = static_cast<int>(basis.size());
    d.dense = Eigen::MatrixXcd::Identity(d.dim, d.dim);
    std::vector<Plane> planes = o.lattice().planes();
    for (auto it = planes.rbegin(); it != planes.rend(); ++it) {
      for (Parity par : {Parity::kEven, Parity::kOdd}) {
        for (PlaquetteAddress p : o.lattice().enumerate_plaquettes(*it, par)) {
          d.dense = (dense_plaquette_exponential(o, p, cfg.magnetic_angle(), basis) * d.dense).eval();
        }
      }
    }
    return d;
  }
  std::vector<OracleLayer> layers = oracle_fermionic_layers(o, cfg);
  std::vector<const OracleLayer*> chosen;
  for (const auto& l : layers) {
    if (name == "fermionic" || l.name == name) chosen.push_back(&l);
  }
  if (chosen.empty()) throw std::invalid_argument("unknown layer '" + name + "'");
  std::vector<OracleVector> cols(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    OracleVector v{{basis[j], cplx(1, 0)}};
    for (const OracleLayer* l : chosen) v = apply_layer(o, *l, std::move(v));
    cols[j] = std::move(v);
  }
  return from_columns(basis, cols);
}

}  // namespace qedqca
