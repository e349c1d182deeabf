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

#include "qedqca/jw_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qedqca/dense_step.hpp"
#include "qedqca/evolution.hpp"
#include "test_util.hpp"

using namespace qedqca;

namespace {

// Largest deviation between two operators on a config.
double op_diff(const Oracle& o, const Operator& a, const Operator& b, const OracleConfig& c) {
  OracleVector va = o.apply(a, c), vb = o.apply(b, c);
  absl::flat_hash_map<OracleConfig, cplx, OracleConfigHash> m;
  for (auto& [x, v] : va) m[x] += v;
  for (auto& [x, v] : vb) m[x] -= v;
  double d = 0;
  for (auto& [x, v] : m) d = std::max(d, std::abs(v));
  return d;
}

std::vector<HalfLinkId> all_half_links(const Lattice& lat) {
  std::vector<HalfLinkId> out;
  for (int x = 0; x < lat.site_count(); ++x)
    for (int a = 0; a < lat.spatial_dim(); ++a)
      for (int s : {-1, +1}) out.push_back({x, Direction{a, s}});
  return out;
}

}  // namespace

TEST(jw_oracle, fermion_anticommutation_sampled) {
  Lattice lat(2, {2, 2}, 2);
  Oracle o(lat);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 64; ++t) {
    OracleConfig c = o.random_restricted_config(rng);
    for (int x = 0; x < 4; ++x)
      for (int j = 0; j < 2; ++j)
        for (int y = 0; y < 4; ++y)
          for (int k = 0; k < 2; ++k) {
            Operator ac = o.a(x, j) * o.a_dag(y, k) + o.a_dag(y, k) * o.a(x, j);
            Operator want = (x == y && j == k) ? Operator::identity() : Operator();
            ASSERT_LT(op_diff(o, ac, want, c), 1e-12);
          }
  }
}

TEST(jw_oracle, link_operators_commute_with_fermions_and_each_other) {
  Lattice lat(2, {2, 2}, 4);
  Oracle o(lat);
  std::mt19937_64 rng(2);
  auto hl = all_half_links(lat);
  for (int t = 0; t < 16; ++t) {
    OracleConfig c = o.random_restricted_config(rng);
    for (const auto& h : hl) {
      Operator v = o.V(h);
      for (int x = 0; x < 4; ++x)
        for (int j = 0; j < 2; ++j) {
          ASSERT_LT(op_diff(o, v * o.a(x, j), o.a(x, j) * v, c), 1e-12);
          ASSERT_LT(op_diff(o, v * o.a_dag(x, j), o.a_dag(x, j) * v, c), 1e-12);
        }
      for (const auto& g : hl) ASSERT_LT(op_diff(o, v * o.V(g), o.V(g) * v, c), 1e-12);
    }
  }
}

TEST(jw_oracle, half_link_relations_on_split_space) {
  Lattice lat(2, {2, 2}, 2);
  Oracle o(lat);
  std::mt19937_64 rng(3);
  auto hl = all_half_links(lat);
  for (int t = 0; t < 16; ++t) {
    OracleConfig c = o.random_split_config(rng);
    for (const auto& h : hl) {
      for (const auto& g : hl) {
        if (h == g) continue;
        Operator ac = o.s(h) * o.s_dag(g) + o.s_dag(g) * o.s(h);
        ASSERT_LT(op_diff(o, ac, Operator(), c), 1e-12);
      }
      for (int x = 0; x < 4; ++x)
        for (int j = 0; j < 2; ++j) {
          Operator ac = o.a(x, j) * o.s_dag(h) + o.s_dag(h) * o.a(x, j);
          ASSERT_LT(op_diff(o, ac, Operator(), c), 1e-12);
        }
    }
  }
}

// With a unitary cyclic lowering operator, s s+ and s+ s are both the identity,
// so the same-half-link anticommutator is 2, not 1.
TEST(jw_oracle, same_half_link_anticommutator_is_two) {
  Lattice lat(2, {2, 2}, 4);
  Oracle o(lat);
  std::mt19937_64 rng(4);
  HalfLinkId h{1, Direction{0, -1}};
  OracleConfig c = o.random_split_config(rng);
  Operator ac = o.s(h) * o.s_dag(h) + o.s_dag(h) * o.s(h);
  ASSERT_LT(op_diff(o, ac, cplx(2, 0) * Operator::identity(), c), 1e-12);
}

TEST(jw_oracle, v_equals_u_times_z_string) {
  Lattice lat(2, {3, 3}, 4);
  Oracle o(lat);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    OracleConfig c = o.random_restricted_config(rng);
    for (int x = 0; x < lat.site_count(); ++x)
      for (int a = 0; a < 2; ++a) {
        HalfLinkId h{x, Direction{a, +1}};
        HalfLinkId other{lat.shift(x, h.dir), -h.dir};
        int r1 = o.rank(lat.half_link_dof(h)), r2 = o.rank(lat.half_link_dof(other));
        if (r1 > r2) continue;
        ASSERT_LT(op_diff(o, o.V(h), o.U(h) * o.z_string(r1, r2), c), 1e-12);
      }
  }
}

TEST(jw_oracle, hopping_term_is_local) {
  Lattice lat(2, {3, 3}, 2);
  Oracle o(lat);
  std::mt19937_64 rng(6);
  int x = 4;
  Operator hop = o.hopping_term(x, 0, 0, 1);
  int y = lat.shift(x, {0, +1});
  for (int t = 0; t < 200; ++t) {
    OracleConfig c = o.random_restricted_config(rng);
    for (const auto& [out, v] : o.apply(hop, c)) {
      for (int r = 0; r < o.dof_count(); ++r) {
        int s = lat.dof_at_rank(r).site;
        if (s != x && s != y) ASSERT_EQ(out.v[r], c.v[r]);
      }
      // The sign only depends on dofs at x and x+mu: flipping any other bit keeps it.
      OracleConfig c2 = c;
      for (int r = 0; r < o.dof_count(); ++r) {
        int s = lat.dof_at_rank(r).site;
        if (s != x && s != y && lat.is_mode(lat.dof_at_rank(r))) c2.v[r] ^= 1;
      }
      auto w = o.apply(hop, c2);
      ASSERT_EQ(w.size(), 1u);
      ASSERT_NEAR(std::abs(w[0].second - v), 0, 1e-15);
    }
  }
}

TEST(jw_oracle, plaquette_equals_minus_corner_product) {
  for (auto lat : {Lattice(2, {2, 2}, 2), Lattice(2, {3, 3}, 4), Lattice(3, {2, 2, 2}, 2)}) {
    Oracle o(lat);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
      OracleConfig c = o.random_restricted_config(rng);
      for (PlaquetteAddress p : lat.all_plaquettes()) {
        ASSERT_LT(op_diff(o, o.plaquette(p), o.plaquette_from_corners(p), c), 1e-12);
      }
    }
  }
}

TEST(jw_oracle, gauge_transform_examples) {
  Lattice lat(2, {2, 2}, 4);
  Oracle o(lat);
  ConfigLayout layout(lat);
  std::mt19937_64 rng(9);
  std::vector<OracleConfig> cs;
  for (int i = 0; i < 20; ++i) cs.push_back(o.random_restricted_config(rng));
  OracleBasis basis(cs);
  DenseOperator zero = dense_gauge_transform(o, {{0, 0, 0, 0}}, basis);
  ASSERT_LT((zero.to_dense() - Eigen::MatrixXcd::Identity(20, 20)).norm(), 1e-15);
  // Constant phase: total charge is the fermion number, since link values cancel pairwise.
  double c0 = 0.7;
  DenseOperator cst = dense_gauge_transform(o, {{c0, c0, c0, c0}}, basis);
  for (int i = 0; i < 20; ++i) {
    int f = 0;
    for (int x = 0; x < 4; ++x)
      for (int j = 0; j < 2; ++j) f += basis[i].v[o.rank(lat.mode_dof(x, j))];
    ASSERT_NEAR(std::abs((*cst.perm)[i].second - std::exp(cplx(0, c0 * f))), 0, 1e-12);
  }
  // One link with value l, phase at its positive end only.
  BasisConfig b = layout.empty();
  layout.set_link_value(b, lat.link_index({2, 1}), 1);
  double phi = 0.4;
  OracleBasis one({o.embed(layout, b)});
  DenseOperator g = dense_gauge_transform(o, {{0, 0, phi, 0}}, one);
  ASSERT_NEAR(std::abs((*g.perm)[0].second - std::exp(cplx(0, phi))), 0, 1e-15);
}

TEST(jw_oracle, hamiltonian_and_steps) {
  Lattice lat(2, {2, 2}, 2);
  Oracle o(lat);
  ConfigLayout layout(lat);
  StepConfig cfg = StepConfig::free(0.3, 2, 1.1, 0.4, 0.8);
  OracleBasis vac({o.embed(layout, layout.empty())});
  ASSERT_EQ(ks_hamiltonian(o, KsPart::kElectric, cfg, vac)(0, 0), cplx(0, 0));
  std::mt19937_64 rng(10);
  std::vector<OracleConfig> seeds{o.random_restricted_config(rng)};
  OracleBasis sector = OracleBasis::closure(o, seeds, all_plaquette_operators(o));
  DenseOperator e = dense_step(o, "electric", cfg, sector);
  ASSERT_TRUE(e.perm.has_value());
  for (int i = 0; i < e.dim; ++i) ASSERT_EQ((*e.perm)[i].first, i);
  // Fermionic step on a particle-number-closed set of configurations.
  std::vector<OracleConfig> one;
  for (int x = 0; x < 4; ++x)
    for (int j = 0; j < 2; ++j) {
      BasisConfig b = layout.empty();
      b.set_bit(layout.fermion_bit(x, j), true);
      one.push_back(o.embed(layout, b));
    }
  std::vector<Operator> hops;
  for (int x = 0; x < 4; ++x)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) hops.push_back(o.hopping_term(x, a, j, k));
  for (int x = 0; x < 4; ++x) hops.push_back(o.mass_term(x, 0, 1));
  OracleBasis reach = OracleBasis::closure(o, one, hops);
  Eigen::MatrixXcd f = dense_step(o, "fermionic", cfg, reach).to_dense();
  ASSERT_LT((f.adjoint() * f - Eigen::MatrixXcd::Identity(f.rows(), f.cols())).norm(), 1e-12);
}

TEST(momentum, zero_momentum_is_exact) {
  for (int dim : {2, 3}) {
    std::vector<double> k(dim, 0.0);
    double d = spectral_norm(qw_momentum_step(k, 0.1, 0.7, dim) - continuum_momentum_step(k, 0.1, 0.7, dim));
    ASSERT_LT(d, 1e-12);
  }
}

TEST(momentum, massless_along_mu_has_exact_phases) {
  double eps = 0.2, k = 0.9;
  for (int dim : {2, 3}) {
    std::vector<double> kv(dim, 0.0);
    kv[0] = k;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(qw_momentum_step(kv, eps, 0.0, dim));
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      double ph = std::arg(es.eigenvalues()(i));
      ASSERT_NEAR(std::abs(ph), eps * k, 1e-12);
    }
  }
}

TEST(momentum, gamma_matrices_anticommute) {
  for (int dim : {2, 3}) {
    int n = dim == 2 ? 2 : 4;
    for (int a = 0; a <= dim; ++a)
      for (int b = 0; b <= dim; ++b) {
        Eigen::MatrixXcd ac = gamma_matrix(a, dim) * gamma_matrix(b, dim) + gamma_matrix(b, dim) * gamma_matrix(a, dim);
        Eigen::MatrixXcd want = (a == b ? 2.0 : 0.0) * Eigen::MatrixXcd::Identity(n, n);
        ASSERT_LT((ac - want).norm(), 1e-15);
      }
  }
}

TEST(momentum, generic_order_at_least_one) {
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  ConvergenceFit f2 = convergence_order({0.4, 0.3}, 0.5, eps, 2);
  ConvergenceFit f3 = convergence_order({0.4, 0.3, 0.2}, 0.5, eps, 3);
  ASSERT_GE(f2.order, 1.0);
  ASSERT_GE(f3.order, 1.0);
}
