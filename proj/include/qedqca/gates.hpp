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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qedqca/fock.hpp"
#include "qedqca/lattice.hpp"

namespace qedqca {

using Matrix = Eigen::MatrixXcd;

// 1 + M + det(M) on {|00>, |01>, |10>, |11>}, index 2*n_hi + n_lo; M acts on (lo, hi).
Eigen::Matrix4cd extend_one_particle_gate(const Eigen::Matrix2cd& m);

enum class OnsiteKind { kMass2d, kSwap, kHadamardMu, kFGate, kMass3d, kSwap3d, kHKappa, kHMu, kHNu };

struct GateParams {
  double epsilon = 0;
  double mass = 0;
};

Eigen::Matrix2cd qw_mass2d(double eps_m);
Eigen::Matrix2cd qw_swap();
Eigen::Matrix2cd qw_hadamard();
Eigen::Matrix2cd qw_fgate();

// One-particle walk gate of each kind: 2x2 in 2D, 4x4 in 3D (basis: mode 0 first).
Matrix qw_onsite(OnsiteKind kind, GateParams params);
// Multi-particle on-site matrix: 4x4 in 2D, 16x16 in 3D, index sum_j n_j 2^j.
Matrix onsite_matrix(OnsiteKind kind, GateParams params);
// A two-mode gate on modes (lo, lo+1) of an n-mode site.
Matrix embed_pair(const Eigen::Matrix4cd& g, int lo, int n_modes);
// Restriction to one-particle states 1<<j.
Matrix one_particle_block(const Matrix& m, int n_modes);
bool is_3d_kind(OnsiteKind kind);

struct GaugeAction {
  LinkId link;
  int delta = +1;  // added to the stored value when the particle goes from support[0] to support[1]
};

// Fermionic part indexed by sum_i n(support[i]) 2^i. For a hop gate, columns that move the
// particle between support[0] and support[1] also shift the link and pick up the parity of
// sign_rule evaluated on the input configuration.
struct LocalGate {
  std::vector<DofId> support;
  Matrix matrix;
  std::optional<GaugeAction> gauge_action;
  std::vector<DofId> sign_rule;
};

LocalGate onsite_gate(const Lattice& lat, int site, OnsiteKind kind, GateParams params);
LocalGate pair_gate(const Lattice& lat, int site, int lo_mode, const Eigen::Matrix4cd& g);
// Hop between (x, from_mode) and (x+eta, to_mode) across link (x, eta).
LocalGate hop_gate(const Lattice& lat, int site, int axis, int from_mode, int to_mode);
// T in 2D; the composite T (S x S) T in 3D.
std::vector<LocalGate> transport_gate(const Lattice& lat, int site, int axis);

void apply_gate(const LocalGate& g, SparseState& state);
void apply_gates(const std::vector<LocalGate>& gates, SparseState& state);

bool is_unitary(const Matrix& m, double tol = 1e-12);

}  // namespace qedqca
