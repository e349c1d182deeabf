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

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qedqca/fock.hpp"
#include "qedqca/gates.hpp"
#include "qedqca/lattice.hpp"

namespace qedqca {

enum class CouplingMode { kLocked, kFree };
enum class MagneticFormulation { kFourier, kQwSplit, kExact };

struct StepConfig {
  double epsilon = 0;
  double mass = 0;
  double g_electric = 1;
  double g_magnetic = 1;
  int k = 4;
  CouplingMode coupling_mode = CouplingMode::kLocked;
  MagneticFormulation magnetic_formulation = MagneticFormulation::kFourier;

  // eps^2 g_E^2 / 2 = 2 pi / k
  static double locked_epsilon(int k, double g_electric);
  static StepConfig locked(int k, double g_electric, double mass, double g_magnetic,
                           MagneticFormulation f = MagneticFormulation::kFourier);
  static StepConfig free(double epsilon, int k, double g_electric, double mass, double g_magnetic,
                         MagneticFormulation f = MagneticFormulation::kFourier);
  void validate() const;
  double magnetic_angle() const { return epsilon * epsilon * g_magnetic * g_magnetic / 2; }
};

struct Layer {
  std::string name;
  std::vector<LocalGate> gates;
};

std::vector<Layer> fermionic_layers(const Lattice& lat, const StepConfig& cfg);
void fermionic_step(SparseState& state, const StepConfig& cfg);
void electric_step(SparseState& state, const StepConfig& cfg);
void magnetic_step(SparseState& state, const StepConfig& cfg, Plane plane);
// All planes; in 3D (nu,kappa), then (mu,kappa), then (mu,nu).
void magnetic_layer(SparseState& state, const StepConfig& cfg);
void full_step(SparseState& state, const StepConfig& cfg);

// P|c> = sign(c) |shift(c)>; links L1 = (x,eta), L2 = (x+eta,zeta) are lowered,
// L3 = (x+zeta,eta), L4 = (x,zeta) raised. The shift register n is the stored value of L4.
struct PlaquetteBlock {
  PlaquetteAddress address;
  std::array<int, 4> links{};
  std::array<int, 4> deltas{-1, -1, +1, +1};
  int base_sign = -1;
  std::vector<DofId> sign_dofs;
};

PlaquetteBlock plaquette_block(const Lattice& lat, PlaquetteAddress p);
int plaquette_sign(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c);
BasisConfig plaquette_shift(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c, int times);
int plaquette_register(const ConfigLayout& layout, const PlaquetteBlock& b, const BasisConfig& c);

// k x k gate on the sign-dressed shift register.
Eigen::MatrixXcd plaquette_tilde_gate(int k, double theta, MagneticFormulation f);
void apply_plaquette_gate(SparseState& state, const PlaquetteBlock& b, const Eigen::MatrixXcd& tilde);
void apply_plaquette_exact(SparseState& state, PlaquetteAddress p, double theta);

}  // namespace qedqca
