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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qedqca/dense_step.hpp"
#include "test_util.hpp"

using namespace qedqca;

TEST(extend_one_particle_gate, swap_has_minus_one_corner) {
  Eigen::Matrix4cd g = extend_one_particle_gate(qw_swap());
  ASSERT_EQ(g(3, 3), cplx(-1, 0));
  ASSERT_EQ(g(0, 0), cplx(1, 0));
  ASSERT_EQ(g(2, 1), cplx(1, 0));
}

TEST(extend_one_particle_gate, identity) {
  ASSERT_TRUE(extend_one_particle_gate(Eigen::Matrix2cd::Identity()).isApprox(Eigen::Matrix4cd::Identity()));
}

TEST(extend_one_particle_gate, rotation_determinant_is_one) {
  Eigen::Matrix4cd g = extend_one_particle_gate(qw_mass2d(0.37));
  ASSERT_NEAR(std::abs(g(3, 3) - cplx(1, 0)), 0, 1e-15);
}

TEST(extend_one_particle_gate, rejects_non_unitary) {
  Eigen::Matrix2cd m;
  m << 1, 1, 0, 1;
  ASSERT_THROW(extend_one_particle_gate(m), std::invalid_argument);
}

TEST(extend_one_particle_gate, inverse_pair) {
  for (Eigen::Matrix2cd m : {qw_hadamard(), qw_fgate(), qw_mass2d(0.9), qw_swap()}) {
    Eigen::Matrix4cd p = extend_one_particle_gate(m) * extend_one_particle_gate(m.adjoint());
    ASSERT_LT((p - Eigen::Matrix4cd::Identity()).norm(), 1e-14);
  }
}

TEST(onsite_gate, mass2d_quarter_turn) {
  Matrix m = onsite_matrix(OnsiteKind::kMass2d, {std::numbers::pi / 2, 1.0});
  ASSERT_NEAR(std::abs(m(2, 1) - cplx(1, 0)), 0, 1e-15);
  ASSERT_NEAR(std::abs(m(1, 1)), 0, 1e-15);
  ASSERT_NEAR(std::abs(m(3, 3) - cplx(1, 0)), 0, 1e-15);
}

TEST(onsite_gate, swap_exchange_phase) {
  ASSERT_EQ(onsite_matrix(OnsiteKind::kSwap, {})(3, 3), cplx(-1, 0));
}

TEST(onsite_gate, mass3d_zero_is_identity) {
  Matrix m = onsite_matrix(OnsiteKind::kMass3d, {0.0, 1.0});
  ASSERT_LT((m - Matrix::Identity(16, 16)).norm(), 1e-15);
}

TEST(onsite_gate, hkappa_exchanges_modes_one_and_three) {
  Matrix b = one_particle_block(onsite_matrix(OnsiteKind::kHKappa, {}), 4);
  Matrix want = Matrix::Zero(4, 4);
  want(0, 0) = want(2, 2) = want(1, 3) = want(3, 1) = 1;
  ASSERT_LT((b - want).norm(), 1e-15);
}

TEST(onsite_gate, all_kinds_unitary_and_match_walk) {
  GateParams p{0.3, 0.7};
  for (OnsiteKind k : {OnsiteKind::kMass2d, OnsiteKind::kSwap, OnsiteKind::kHadamardMu, OnsiteKind::kFGate,
                       OnsiteKind::kMass3d, OnsiteKind::kSwap3d, OnsiteKind::kHKappa, OnsiteKind::kHMu,
                       OnsiteKind::kHNu}) {
    Matrix m = onsite_matrix(k, p);
    int modes = is_3d_kind(k) ? 4 : 2;
    ASSERT_TRUE(is_unitary(m)) << static_cast<int>(k);
    ASSERT_LT((one_particle_block(m, modes) - qw_onsite(k, p)).norm(), 1e-14) << static_cast<int>(k);
  }
}

TEST(onsite_gate, dimension_mismatch) {
  Lattice lat(2, {2, 2}, 2);
  ASSERT_THROW(onsite_gate(lat, 0, OnsiteKind::kMass3d, {}), std::invalid_argument);
}

TEST(transport_gate, forward_hop_raises_link) {
  Lattice lat(2, {3, 3}, 4);
  ConfigLayout layout(lat);
  BasisConfig c = layout.empty();
  c.set_bit(layout.fermion_bit(0, 1), true);
  SparseState s = tu::basis_state(lat, c);
  apply_gates(transport_gate(lat, 0, 0), s);
  ASSERT_EQ(s.size(), 1u);
  const auto& [out, amp] = *s.begin();
  int y = lat.shift(0, {0, +1});
  ASSERT_TRUE(out.bit(layout.fermion_bit(y, 0)));
  ASSERT_FALSE(out.bit(layout.fermion_bit(0, 1)));
  ASSERT_EQ(layout.link_value(out, lat.link_index({0, 0})), 1);
  ASSERT_NEAR(std::abs(std::abs(amp) - 1), 0, 1e-15);
}

TEST(transport_gate, empty_pair_unchanged_and_full_pair_negated) {
  Lattice lat(2, {2, 2}, 2);
  ConfigLayout layout(lat);
  BasisConfig c = layout.empty();
  SparseState s = tu::basis_state(lat, c);
  apply_gates(transport_gate(lat, 0, 1), s);
  ASSERT_EQ(s.amplitude(c), cplx(1, 0));
  c.set_bit(layout.fermion_bit(0, 1), true);
  c.set_bit(layout.fermion_bit(lat.shift(0, {1, +1}), 0), true);
  layout.set_link_value(c, 3, 1);
  SparseState t = tu::basis_state(lat, c);
  apply_gates(transport_gate(lat, 0, 1), t);
  ASSERT_EQ(t.size(), 1u);
  ASSERT_EQ(t.amplitude(c), cplx(-1, 0));
}

namespace {

// Every restricted config of a small lattice, or a random sample of a larger one.
void check_transport_against_oracle(const Lattice& lat, int samples) {
  Oracle o(lat);
  ConfigLayout layout(lat);
  std::vector<OracleConfig> configs;
  std::mt19937_64 rng(7);
  if (samples == 0) configs = o.restricted_configs();
  else for (int i = 0; i < samples; ++i) configs.push_back(o.random_restricted_config(rng));
  for (int x = 0; x < lat.site_count(); ++x) {
    for (int axis = 0; axis < lat.spatial_dim(); ++axis) {
      std::vector<LocalGate> fast = transport_gate(lat, x, axis);
      OracleGate ref = oracle_transport_gate(o, x, axis);
      for (const auto& oc : configs) {
        SparseState s = tu::basis_state(lat, o.restrict(layout, oc));
        apply_gates(fast, s);
        double d = tu::max_diff(o, s, apply_gate(o, ref, {{oc, 1.0}}));
        ASSERT_LT(d, 1e-12) << "site " << x << " axis " << axis;
      }
    }
  }
}

}  // namespace

TEST(transport_gate, sign_pinned_to_oracle_2x2_k2_exhaustive) {
  check_transport_against_oracle(Lattice(2, {2, 2}, 2), 0);
}

TEST(transport_gate, sign_pinned_to_oracle_3x3_k4) {
  check_transport_against_oracle(Lattice(2, {3, 3}, 4), 300);
}

TEST(transport_gate, sign_pinned_to_oracle_3d) {
  check_transport_against_oracle(Lattice(3, {2, 2, 2}, 2), 40);
  check_transport_against_oracle(Lattice(3, {3, 2, 2}, 4), 20);
}

TEST(transport_gate, conserves_charge_plus_flux) {
  Lattice lat(2, {3, 3}, 4);
  ConfigLayout layout(lat);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    BasisConfig c = tu::random_config(layout, rng);
    SparseState s = tu::basis_state(lat, c);
    apply_gates(transport_gate(lat, 4, 1), s);
    for (const auto& [out, a] : s) ASSERT_EQ(config_sector(layout, out), config_sector(layout, c));
  }
}
