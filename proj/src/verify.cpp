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

#include "qedqca/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qedqca/dense_step.hpp"
#include "qedqca/evolution.hpp"
#include "qedqca/gates.hpp"
#include "qedqca/jw_oracle.hpp"
#include "qedqca/observables.hpp"
#include "qedqca/stateprep.hpp"

namespace qedqca {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckResult at_most(std::string name, double measured, double tol) {
  return {std::move(name), std::isfinite(measured) && measured <= tol, measured, "<= " + fmt(tol)};
}

CheckResult at_least(std::string name, double measured, double tol) {
  return {std::move(name), measured >= tol, measured, ">= " + fmt(tol)};
}

CheckResult in_range(std::string name, double measured, double lo, double hi) {
  return {std::move(name), measured >= lo && measured <= hi, measured, "in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

// Largest coefficient difference between two oracle vectors.
double vec_diff(const OracleVector& a, const OracleVector& b) {
  absl::flat_hash_map<OracleConfig, cplx, OracleConfigHash> m;
  for (const auto& [x, v] : a) m[x] += v;
  for (const auto& [x, v] : b) m[x] -= v;
  double d = 0;
  for (const auto& [x, v] : m) d = std::max(d, std::abs(v));
  return d;
}

double op_diff(const Oracle& o, const Operator& a, const Operator& b, const OracleConfig& c) {
  return vec_diff(o.apply(a, c), o.apply(b, c));
}

double state_vs_oracle(const Oracle& o, const SparseState& fast, const OracleVector& ref) {
  SparseState r(fast.lattice());
  for (const auto& [c, v] : ref) r.add(o.restrict(fast.layout(), c), v);
  return distance(fast, r);
}

SparseState basis_state(const Lattice& lat, const BasisConfig& c) {
  SparseState s(lat);
  s.add(c, 1.0);
  return s;
}

OracleVector to_oracle(const Oracle& o, const SparseState& s) {
  OracleVector v;
  for (const auto& [c, a] : s.sorted()) v.push_back({o.embed(s.layout(), c), a});
  return v;
}

BasisConfig random_config(const ConfigLayout& layout, std::mt19937_64& rng) {
  const Lattice& lat = layout.lattice();
  std::vector<int> occ(layout.fermion_bit_count()), vals(lat.link_count());
  for (int& b : occ) b = std::uniform_int_distribution<int>(0, 1)(rng);
  for (int& v : vals) v = std::uniform_int_distribution<int>(0, lat.k() - 1)(rng);
  return layout.encode(occ, vals);
}

// Random links and at most max_particles fermions, which keeps sparse evolution small.
BasisConfig random_sparse_config(const ConfigLayout& layout, int max_particles, std::mt19937_64& rng) {
  BasisConfig c = random_config(layout, rng);
  for (int b = 0; b < layout.fermion_bit_count(); ++b) c.set_bit(b, false);
  int n = std::uniform_int_distribution<int>(0, max_particles)(rng);
  std::uniform_int_distribution<int> pick(0, layout.fermion_bit_count() - 1);
  for (int i = 0; i < n; ++i) c.set_bit(pick(rng), true);
  return c;
}

SparseState random_sparse_state(const Lattice& lat, int n_configs, std::mt19937_64& rng) {
  SparseState s(lat);
  std::normal_distribution<double> g;
  for (int i = 0; i < n_configs; ++i) s.add(random_sparse_config(s.layout(), 2, rng), cplx(g(rng), g(rng)));
  s.scale(1.0 / s.norm());
  return s;
}

std::vector<HalfLinkId> all_half_links(const Lattice& lat) {
  std::vector<HalfLinkId> out;
  for (int x = 0; x < lat.site_count(); ++x)
    for (int a = 0; a < lat.spatial_dim(); ++a)
      for (int s : {-1, +1}) out.push_back({x, Direction{a, s}});
  return out;
}

// ---------------------------------------------------------------- algebra

void algebra_on(const Lattice& lat, int samples, const std::string& tag, std::vector<CheckResult>& out) {
  Oracle o(lat);
  std::mt19937_64 rng(11);
  std::vector<OracleConfig> cs;
  for (int i = 0; i < samples; ++i) cs.push_back(o.random_split_config(rng));
  auto hl = all_half_links(lat);
  std::vector<std::pair<int, int>> modes;
  for (int x = 0; x < lat.site_count(); ++x)
    for (int j = 0; j < lat.d_modes(); ++j) modes.push_back({x, j});
  Operator id = Operator::identity(), zero;

  double ferm = 0, bos = 0, bf = 0, rr_off = 0, rr_diag = 0, ar = 0;
  for (const auto& c : cs) {
    for (auto [x, j] : modes)
      for (auto [y, k] : modes) {
        Operator a = o.a(x, j), bd = o.a_dag(y, k), b = o.a(y, k);
        ferm = std::max(ferm, op_diff(o, a * bd + bd * a, (x == y && j == k) ? id : zero, c));
        ferm = std::max(ferm, op_diff(o, a * b + b * a, zero, c));
      }
    for (const auto& h : hl) {
      Operator v = o.V(h), sh = o.s(h);
      for (const auto& g : hl) {
        Operator w = o.V(g);
        bos = std::max(bos, op_diff(o, v * w, w * v, c));
        bos = std::max(bos, op_diff(o, v * w.adjoint(), w.adjoint() * v, c));
        Operator sg = o.s_dag(g);
        double d = op_diff(o, sh * sg + sg * sh, h == g ? id : zero, c);
        (h == g ? rr_diag : rr_off) = std::max(h == g ? rr_diag : rr_off, d);
      }
      for (auto [x, j] : modes) {
        Operator a = o.a(x, j);
        bf = std::max(bf, op_diff(o, v * a, a * v, c));
        bf = std::max(bf, op_diff(o, v * a.adjoint(), a.adjoint() * v, c));
        Operator sd = o.s_dag(h);
        ar = std::max(ar, op_diff(o, a * sd + sd * a, zero, c));
      }
    }
  }
  out.push_back(at_most(tag + "/fermion_anticommutation", ferm, 1e-12));
  out.push_back(at_most(tag + "/boson_commutation", bos, 1e-12));
  out.push_back(at_most(tag + "/boson_fermion_commutation", bf, 1e-12));
  out.push_back(at_most(tag + "/half_link_anticommutation_distinct", rr_off, 1e-12));
  // A unitary lowering operator gives {s, s+} = 2 on the same half-link.
  out.push_back(at_most(tag + "/half_link_anticommutation_same", rr_diag, 1e-12));
  out.push_back(at_most(tag + "/fermion_half_link_anticommutation", ar, 1e-12));

  int dim = lat.spatial_dim(), n = dim == 2 ? 2 : 4;
  double gam = 0;
  for (int a = 0; a <= dim; ++a)
    for (int b = 0; b <= dim; ++b) {
      Eigen::MatrixXcd ac = gamma_matrix(a, dim) * gamma_matrix(b, dim) + gamma_matrix(b, dim) * gamma_matrix(a, dim);
      Eigen::MatrixXcd want = (a == b ? 2.0 : 0.0) * Eigen::MatrixXcd::Identity(n, n);
      gam = std::max(gam, (ac - want).cwiseAbs().maxCoeff());
    }
  out.push_back(at_most(tag + "/gamma_anticommutation", gam, 1e-12));
}

std::vector<CheckResult> suite_algebra() {
  std::vector<CheckResult> out;
  algebra_on(Lattice(2, {2, 2}, 2), 400, "2d", out);
  algebra_on(Lattice(3, {2, 2, 2}, 2), 40, "3d", out);
  return out;
}

// ---------------------------------------------------------------- locality

// Checks that op never touches dofs outside `sites` and that its coefficients do not
// depend on them. Returns the largest coefficient deviation, or inf on a structural miss.
double support_violation(const Oracle& o, const Lattice& lat, const Operator& op, const std::vector<int>& sites,
                         int samples, std::mt19937_64& rng) {
  auto inside = [&](int rank) {
    int s = lat.dof_at_rank(rank).site;
    return std::find(sites.begin(), sites.end(), s) != sites.end();
  };
  double worst = 0;
  for (int t = 0; t < samples; ++t) {
    OracleConfig c = o.random_split_config(rng);
    OracleVector out = o.apply(op, c);
    for (const auto& [oc, v] : out)
      for (int r = 0; r < o.dof_count(); ++r)
        if (!inside(r) && oc.v[r] != c.v[r]) return kInf;
    OracleConfig c2 = o.random_split_config(rng);
    for (int r = 0; r < o.dof_count(); ++r)
      if (inside(r)) c2.v[r] = c.v[r];
    OracleVector out2 = o.apply(op, c2);
    if (out2.size() != out.size()) return kInf;
    for (std::size_t i = 0; i < out.size(); ++i) {
      OracleConfig want = out[i].first;
      for (int r = 0; r < o.dof_count(); ++r)
        if (!inside(r)) want.v[r] = c2.v[r];
      if (!(want == out2[i].first)) return kInf;
      worst = std::max(worst, std::abs(out[i].second - out2[i].second));
    }
  }
  return worst;
}

void locality_support(const Lattice& lat, const std::string& tag, std::vector<CheckResult>& out) {
  Oracle o(lat);
  std::mt19937_64 rng(21);
  double hop = 0, plaq = 0, corners = 0;
  for (int x = 0; x < lat.site_count(); ++x)
    for (int a = 0; a < lat.spatial_dim(); ++a) {
      int y = lat.shift(x, {a, +1});
      for (int j = 0; j < lat.d_modes(); ++j)
        for (int k = 0; k < lat.d_modes(); ++k)
          hop = std::max(hop, support_violation(o, lat, o.hopping_term(x, a, j, k), {x, y}, 16, rng));
    }
  for (PlaquetteAddress p : lat.all_plaquettes()) {
    Direction e{p.plane.eta, +1}, z{p.plane.zeta, +1};
    int x = p.site;
    std::vector<int> sites{x, lat.shift(x, e), lat.shift(x, z), lat.shift(lat.shift(x, e), z)};
    Operator op = o.plaquette(p);
    plaq = std::max(plaq, support_violation(o, lat, op, sites, 32, rng));
    Operator pc = o.plaquette_from_corners(p);
    for (int t = 0; t < 64; ++t) corners = std::max(corners, op_diff(o, op, pc, o.random_split_config(rng)));
  }
  out.push_back(at_most(tag + "/hopping_term_support", hop, 1e-12));
  out.push_back(at_most(tag + "/plaquette_support", plaq, 1e-12));
  out.push_back(at_most(tag + "/plaquette_equals_minus_corner_product", corners, 1e-12));
}

void locality_fast(const Lattice& lat, int samples, const std::string& tag, std::vector<CheckResult>& out) {
  Oracle o(lat);
  ConfigLayout layout(lat);
  std::mt19937_64 rng(22);
  double tr = 0, pl = 0, layers = 0;
  for (int t = 0; t < samples; ++t) {
    OracleConfig oc = o.random_restricted_config(rng);
    BasisConfig c = o.restrict(layout, oc);
    for (int x = 0; x < lat.site_count(); ++x)
      for (int a = 0; a < lat.spatial_dim(); ++a) {
        SparseState s = basis_state(lat, c);
        apply_gates(transport_gate(lat, x, a), s);
        tr = std::max(tr, state_vs_oracle(o, s, apply_gate(o, oracle_transport_gate(o, x, a), {{oc, 1.0}})));
      }
    for (PlaquetteAddress p : lat.all_plaquettes()) {
      PlaquetteBlock b = plaquette_block(lat, p);
      OracleVector ref = o.apply(o.plaquette(p), oc);
      SparseState s(lat);
      s.add(plaquette_shift(layout, b, c, 1), double(plaquette_sign(layout, b, c)));
      pl = std::max(pl, state_vs_oracle(o, s, ref));
    }
  }
  StepConfig cfg = StepConfig::free(0.3, lat.k(), 1.0, 0.7, 1.0);
  auto fast = fermionic_layers(lat, cfg);
  auto ref = oracle_fermionic_layers(o, cfg);
  for (std::size_t l = 0; l < fast.size(); ++l)
    for (int t = 0; t < samples; ++t) {
      SparseState s = basis_state(lat, random_config(layout, rng));
      OracleVector v = apply_layer(o, ref[l], to_oracle(o, s));
      apply_gates(fast[l].gates, s);
      layers = std::max(layers, state_vs_oracle(o, s, v));
    }
  out.push_back(at_most(tag + "/fast_transport_vs_oracle", tr, 1e-12));
  out.push_back(at_most(tag + "/fast_plaquette_vs_oracle", pl, 1e-12));
  out.push_back(at_most(tag + "/fast_fermionic_layers_vs_oracle", layers, 1e-12));
}

std::vector<CheckResult> suite_locality() {
  std::vector<CheckResult> out;
  locality_support(Lattice(2, {3, 3}, 2), "2d", out);
  locality_support(Lattice(3, {2, 2, 2}, 2), "3d", out);
  locality_fast(Lattice(2, {3, 3}, 4), 100, "2d", out);
  locality_fast(Lattice(3, {2, 2, 2}, 2), 30, "3d", out);
  return out;
}

// ---------------------------------------------------------------- gauge

SparseState dense_gauge(const Oracle& o, const SparseState& s, const GaugePhaseField& f) {
  std::vector<OracleConfig> cs;
  std::vector<cplx> amps;
  for (const auto& [c, a] : s.sorted()) {
    cs.push_back(o.embed(s.layout(), c));
    amps.push_back(a);
  }
  OracleBasis basis(cs);
  DenseOperator g = dense_gauge_transform(o, f, basis);
  SparseState out(s.lattice(), s.tolerance());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto [target, coeff] = (*g.perm)[i];
    out.add(o.restrict(s.layout(), basis[target]), coeff * amps[i]);
  }
  return out;
}

// Phases in (2 pi / k) Z, the gauge group compatible with Z_k link values.
GaugePhaseField random_zk_field(const Lattice& lat, std::mt19937_64& rng) {
  GaugePhaseField f;
  std::uniform_int_distribution<int> d(0, lat.k() - 1);
  for (int x = 0; x < lat.site_count(); ++x) f.phi.push_back(2 * kPi * d(rng) / lat.k());
  return f;
}

void gauge_on(const Lattice& lat, bool with_full_step, const std::string& tag, std::vector<CheckResult>& out) {
  Oracle o(lat);
  std::mt19937_64 rng(31);
  StepConfig cfg = StepConfig::free(0.45, lat.k(), 1.2, 0.3, 0.8);
  std::vector<std::pair<std::string, std::function<void(SparseState&)>>> subs;
  for (const Layer& l : fermionic_layers(lat, cfg)) {
    subs.push_back({l.name, [gates = l.gates](SparseState& s) { apply_gates(gates, s); }});
  }
  subs.push_back({"electric", [&](SparseState& s) { electric_step(s, cfg); }});
  for (auto f : {MagneticFormulation::kFourier, MagneticFormulation::kQwSplit}) {
    StepConfig c = cfg;
    c.magnetic_formulation = f;
    subs.push_back({f == MagneticFormulation::kFourier ? "magnetic_fourier" : "magnetic_qwsplit",
                    [c](SparseState& s) { magnetic_layer(s, c); }});
  }
  if (with_full_step) subs.push_back({"full_step", [&](SparseState& s) { full_step(s, cfg); }});
  for (auto& [name, sub] : subs) {
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
      SparseState s = random_sparse_state(lat, 2, rng);
      GaugePhaseField f = random_zk_field(lat, rng);
      SparseState a = dense_gauge(o, s, f);
      sub(a);
      SparseState b = s;
      sub(b);
      b = dense_gauge(o, b, f);
      worst = std::max(worst, distance(a, b));
    }
    out.push_back(at_most(tag + "/" + name, worst, 1e-10));
  }
}

std::vector<CheckResult> suite_gauge() {
  std::vector<CheckResult> out;
  gauge_on(Lattice(2, {2, 2}, 4), true, "2d", out);
  gauge_on(Lattice(3, {2, 2, 2}, 2), false, "3d", out);

  Lattice lat(2, {2, 2}, 2);
  ConfigLayout layout(lat);
  std::mt19937_64 rng(32);
  StepConfig cfg = StepConfig::locked(2, 1.0, 0.4, 0.9);
  double changed = 0;
  for (int run = 0; run < 3; ++run) {
    SparseState s = basis_state(lat, random_sparse_config(layout, 2, rng));
    std::vector<int> f0 = sector_map(s).sectors.at(0).f;
    for (int t = 0; t < 100; ++t) {
      full_step(s, cfg);
      SectorReport r = sector_map(s);
      if (!r.pure() || r.sectors[0].f != f0) changed += 1;
    }
  }
  out.push_back(at_most("2d/sector_map_over_100_full_steps", changed, 0));
  return out;
}

// ---------------------------------------------------------------- magnetic

// Orbit sum over P^n |c0> with weights lambda^{-n}, built through the oracle.
OracleVector plaquette_eigenstate(const Oracle& o, const Operator& p, const OracleConfig& c0, int k, int q) {
  cplx lambda = std::exp(cplx(0, 2 * kPi * q / k));
  OracleVector v;
  OracleConfig c = c0;
  cplx amp = 1.0 / std::sqrt(double(k));
  for (int n = 0; n < k; ++n) {
    v.push_back({c, amp});
    OracleVector next = o.apply(p, c);
    c = next.at(0).first;
    amp *= next[0].second / lambda;
  }
  return v;
}

std::vector<CheckResult> suite_magnetic() {
  std::vector<CheckResult> out;
  for (int k : {2, 4}) {
    Lattice lat(2, {2, 2}, k);
    Oracle o(lat);
    ConfigLayout layout(lat);
    std::mt19937_64 rng(41);
    StepConfig cfg = StepConfig::free(0.6, k, 1.0, 0.0, 1.3);
    double theta = cfg.magnetic_angle();
    PlaquetteAddress p{0, lat.planes()[0]};
    PlaquetteBlock b = plaquette_block(lat, p);
    Eigen::MatrixXcd tilde = plaquette_tilde_gate(k, theta, MagneticFormulation::kFourier);
    double dense = 0, exact = 0;
    for (int t = 0; t < 8; ++t) {
      BasisConfig c = t == 0 ? layout.empty() : random_config(layout, rng);
      OracleBasis basis = OracleBasis::closure(o, {o.embed(layout, c)}, {o.plaquette(p)});
      Eigen::MatrixXcd u = dense_plaquette_exponential(o, p, theta, basis);
      SparseState s = basis_state(lat, c);
      apply_plaquette_gate(s, b, tilde);
      int col = *basis.index(o.embed(layout, c));
      OracleVector ref;
      for (std::size_t i = 0; i < basis.size(); ++i) ref.push_back({basis[i], u(i, col)});
      dense = std::max(dense, state_vs_oracle(o, s, ref));
      SparseState e = basis_state(lat, c);
      apply_plaquette_exact(e, p, theta);
      exact = std::max(exact, distance(e, s));
    }
    out.push_back(at_most("fourier_vs_dense_exponential_k" + std::to_string(k), dense, 1e-12));
    out.push_back(at_most("fourier_vs_exact_formulation_k" + std::to_string(k), exact, 1e-12));

    double eig = 0;
    Operator op = o.plaquette(p);
    for (int t = 0; t < 4; ++t) {
      OracleConfig c0 = o.random_restricted_config(rng);
      for (int q = 0; q < k; ++q) {
        OracleVector v = plaquette_eigenstate(o, op, c0, k, q);
        OracleVector pv = o.apply(op, v);
        absl::flat_hash_map<OracleConfig, cplx, OracleConfigHash> m;
        for (const auto& [x, a] : v) m[x] += a;
        cplx ev = 0;
        for (const auto& [x, a] : pv) ev += std::conj(m[x]) * a;
        eig = std::max(eig, std::abs(ev - std::exp(cplx(0, 2 * kPi * q / k))));
      }
    }
    out.push_back(at_most("plaquette_eigenvalues_k" + std::to_string(k), eig, 1e-12));
  }

  // The split is exact for k = 2 and 4, where the two shifted swaps commute.
  const int ks = 6;
  auto split_err = [&](double eps) {
    double theta = eps * eps / 2;
    return spectral_norm(plaquette_tilde_gate(ks, theta, MagneticFormulation::kQwSplit) -
                         plaquette_tilde_gate(ks, theta, MagneticFormulation::kFourier));
  };
  out.push_back(in_range("qwsplit_eps4_ratio_k6_eps0.2", split_err(0.2) / split_err(0.1), 12, 20));
  out.push_back(in_range("qwsplit_eps4_ratio_k6_eps0.1", split_err(0.1) / split_err(0.05), 12, 20));

  Lattice lat(2, {2, 2}, 2);
  Oracle o(lat);
  auto ps = lat.all_plaquettes();
  std::vector<Operator> ops;
  for (auto p : ps) ops.push_back(o.plaquette(p));
  double comm = 0;
  for (const OracleConfig& c : o.restricted_configs())
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b) {
        OracleVector x = o.apply(ops[b], o.apply(ops[a], c));
        OracleVector y = o.apply(ops[a], o.apply(ops[b], c));
        if (x.size() != 1 || y.size() != 1 || !(x[0].first == y[0].first)) {
          comm = kInf;
        } else {
          comm = std::max(comm, std::abs(x[0].second - y[0].second));
        }
      }
  out.push_back(at_most("plaquette_commutation_2x2_k2_all_configs", comm, 0));
  return out;
}

// ---------------------------------------------------------------- trotter

// Dense matrix of a fast step restricted to an oracle basis.
Eigen::MatrixXcd fast_matrix(const Oracle& o, const Lattice& lat, const OracleBasis& basis,
                             const std::function<void(SparseState&)>& step, double* leak) {
  ConfigLayout layout(lat);
  int n = static_cast<int>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    SparseState s = basis_state(lat, o.restrict(layout, basis[j]));
    step(s);
    for (const auto& [c, a] : s) {
      auto i = basis.index(o.embed(layout, c));
      if (i) {
        m(*i, j) = a;
      } else if (leak) {
        *leak += std::norm(a);
      }
    }
  }
  return m;
}

std::vector<CheckResult> suite_trotter() {
  std::vector<CheckResult> out;
  Lattice lat(2, {2, 2}, 2);
  Oracle o(lat);
  ConfigLayout layout(lat);
  OracleBasis zero = OracleBasis::closure(o, {o.embed(layout, layout.empty())}, all_plaquette_operators(o));

  // D_E against exp(i eps H_E) on a sector that also carries fermions.
  std::mt19937_64 rng(51);
  std::vector<OracleConfig> seeds{o.embed(layout, layout.empty())};
  for (int i = 0; i < 3; ++i) seeds.push_back(o.embed(layout, random_config(layout, rng)));
  OracleBasis mixed = OracleBasis::closure(o, seeds, all_plaquette_operators(o));
  double de = 0;
  for (StepConfig cfg : {StepConfig::free(0.3, 2, 1.1, 0.0, 1.0), StepConfig::locked(2, 1.1, 0.0, 1.0)}) {
    double leak = 0;
    Eigen::MatrixXcd fast = fast_matrix(o, lat, mixed, [&](SparseState& s) { electric_step(s, cfg); }, &leak);
    Eigen::MatrixXcd ref = expi_hermitian(ks_hamiltonian(o, KsPart::kElectric, cfg, mixed), cfg.epsilon);
    de = std::max(de, spectral_norm(fast - ref) + leak);
  }
  out.push_back(at_most("electric_step_equals_exp_HE", de, 1e-12));

  auto defect = [&](double eps) {
    StepConfig cfg = StepConfig::free(eps, 2, 1.0, 0.0, 1.0);
    double leak = 0;
    Eigen::MatrixXcd fast = fast_matrix(
        o, lat, zero,
        [&](SparseState& s) {
          electric_step(s, cfg);
          magnetic_layer(s, cfg);
        },
        &leak);
    Eigen::MatrixXcd h = ks_hamiltonian(o, KsPart::kElectric, cfg, zero) + ks_hamiltonian(o, KsPart::kMagnetic, cfg, zero);
    return spectral_norm(fast - expi_hermitian(h, eps)) + leak;
  };
  double d1 = defect(0.2), d2 = defect(0.1), d3 = defect(0.05);
  out.push_back(in_range("pure_gauge_ratio_eps0.2", d1 / d2, 12, 20));
  out.push_back(in_range("pure_gauge_ratio_eps0.1", d2 / d3, 12, 20));
  return out;
}

// ---------------------------------------------------------------- dirac convergence

std::vector<CheckResult> suite_dirac() {
  std::vector<CheckResult> out;
  const std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  for (int dim : {2, 3}) {
    std::string tag = std::to_string(dim) + "d";
    for (auto [kn, m] : {std::pair{0.5, 0.0}, {0.5, 0.5}, {1.0, 0.3}}) {
      // Generic direction so no axis is special.
      std::vector<double> dir = dim == 2 ? std::vector<double>{0.8, 0.6} : std::vector<double>{0.48, 0.6, 0.64};
      std::vector<double> kv;
      for (double d : dir) kv.push_back(kn * d);
      ConvergenceFit f = convergence_order(kv, m, eps, dim);
      out.push_back(at_least(tag + "/order_k" + fmt(kn) + "_m" + fmt(m), f.order, 0.9));
    }
    double zero = 0;
    for (double m : {0.0, 0.3, 0.5})
      for (double e : eps) {
        std::vector<double> kv(dim, 0.0);
        zero = std::max(zero, spectral_norm(qw_momentum_step(kv, e, m, dim) - continuum_momentum_step(kv, e, m, dim)));
      }
    out.push_back(at_most(tag + "/exact_at_zero_momentum", zero, 1e-12));
  }
  return out;
}

// ---------------------------------------------------------------- causality

int torus_distance(const Lattice& lat, int a, int b) {
  Coord ca = lat.coord(a), cb = lat.coord(b);
  int d = 0;
  for (int ax = 0; ax < lat.spatial_dim(); ++ax) {
    int n = lat.dims()[ax];
    int diff = ((ca[ax] - cb[ax]) % n + n) % n;
    d = std::max(d, std::min(diff, n - diff));
  }
  return d;
}

std::vector<CheckResult> suite_causality() {
  std::vector<CheckResult> out;
  // Locked k = 2 with g_E^2 = 2/pi gives eps = pi; g_M = 1/(eps g_E) then sets the
  // magnetic angle to pi/4, where each plaquette gate is a signed permutation.
  const double g_e = std::sqrt(2 / kPi);
  const double eps = StepConfig::locked_epsilon(2, g_e);
  StepConfig cfg = StepConfig::locked(2, g_e, 0.3, 1 / (eps * g_e));
  Lattice lat(2, {6, 6}, 2);
  int x0 = lat.site_index({2, 3, 0});
  SparseState s = string_create(vacuum(lat), x0, 0, {});
  double outside = 0;
  for (int t = 1; t <= 10; ++t) {
    full_step(s, cfg);
    std::vector<double> occ = occupations(s);
    for (int y = 0; y < lat.site_count(); ++y) {
      if (torus_distance(lat, x0, y) <= t) continue;
      for (int j = 0; j < lat.d_modes(); ++j) outside = std::max(outside, occ[y * lat.d_modes() + j]);
    }
  }
  out.push_back(at_most("occupation_outside_cone_6x6_k2_10_steps", outside, 1e-12));
  out.push_back(at_most("norm_drift", std::abs(s.norm() - 1), 1e-10));
  return out;
}

// ---------------------------------------------------------------- exchange

std::vector<CheckResult> suite_exchange() {
  std::vector<CheckResult> out;
  Lattice lat(2, {3, 3}, 4);
  ConfigLayout layout(lat);
  Oracle o(lat);
  int x = 4;
  BasisConfig both = layout.empty();
  both.set_bit(layout.fermion_bit(x, 0), true);
  both.set_bit(layout.fermion_bit(x, 1), true);
  SparseState s = basis_state(lat, both);
  apply_gate(onsite_gate(lat, x, OnsiteKind::kSwap, {}), s);
  out.push_back(at_most("swap_on_11_is_minus_11", std::abs(s.amplitude(both) + 1.0) + std::abs(s.norm() - 1), 1e-14));

  // T exchanges (x, 1) and (x+mu, 0); with both occupied it returns -|11>.
  int y = lat.shift(x, {0, +1});
  BasisConfig hop = layout.empty();
  hop.set_bit(layout.fermion_bit(x, 1), true);
  hop.set_bit(layout.fermion_bit(y, 0), true);
  SparseState t = basis_state(lat, hop);
  apply_gates(transport_gate(lat, x, 0), t);
  OracleVector ref = apply_gate(o, oracle_transport_gate(o, x, 0), {{o.embed(layout, hop), 1.0}});
  double dt = std::abs(t.amplitude(hop) + 1.0) + std::abs(t.norm() - 1) + state_vs_oracle(o, t, ref);
  out.push_back(at_most("transport_on_11_is_minus_11", dt, 1e-14));

  GateParams p{0.37, 0.8};
  std::vector<std::pair<std::string, Eigen::Matrix2cd>> ms{{"X", qw_swap()},
                                                           {"H", qw_hadamard()},
                                                           {"F", qw_fgate()},
                                                           {"C", qw_mass2d(p.epsilon * p.mass)}};
  for (const auto& [name, m] : ms) {
    Eigen::Matrix4cd e = extend_one_particle_gate(m);
    double d = std::abs(e(3, 3) - m.determinant()) + std::abs(e(0, 0) - 1.0);
    d += (e.block(1, 1, 2, 2) - m).cwiseAbs().maxCoeff();
    out.push_back(at_most("extension_rule_" + name, d, 1e-14));
  }
  return out;
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "locality",          "gauge",     "magnetic",
                                              "trotter", "dirac-convergence", "causality", "exchange"};
  return names;
}

SuiteReport run_suite(const std::string& name) {
  static const std::vector<std::pair<std::string, std::function<std::vector<CheckResult>()>>> table{
      {"algebra", suite_algebra},     {"locality", suite_locality},
      {"gauge", suite_gauge},         {"magnetic", suite_magnetic},
      {"trotter", suite_trotter},     {"dirac-convergence", suite_dirac},
      {"causality", suite_causality}, {"exchange", suite_exchange}};
  for (const auto& [n, fn] : table) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport r{name, fn(), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_suites(const std::string& name) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n));
  } else {
    out.push_back(run_suite(name));
  }
  return out;
}

std::string report_json(const std::vector<SuiteReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      nlohmann::json e{{"check", c.check}, {"status", c.pass ? "pass" : "fail"}, {"tolerance", c.tolerance}};
      if (std::isfinite(c.measured)) {
        e["measured"] = c.measured;
      } else {
        e["measured"] = c.measured > 0 ? "inf" : "nan";
      }
      checks.push_back(e);
    }
    j.push_back({{"suite", r.suite}, {"status", r.pass() ? "pass" : "fail"}, {"seconds", r.seconds}, {"checks", checks}});
  }
  return j.dump(2);
}

}  // namespace qedqca
