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

#include <string>
#include <vector>

#include "qedqca/evolution.hpp"
#include "qedqca/jw_oracle.hpp"

namespace qedqca {

// A local gate written as a product of oracle operators, applied first to last.
using OracleGate = std::vector<Operator>;

struct OracleLayer {
  std::string name;
  std::vector<OracleGate> gates;
};

OracleGate oracle_onsite_gate(const Oracle& o, int site, OnsiteKind kind, GateParams p, bool adjoint = false);
OracleGate oracle_transport_gate(const Oracle& o, int site, int axis);
std::vector<OracleLayer> oracle_fermionic_layers(const Oracle& o, const StepConfig& cfg);

OracleVector apply_gate(const Oracle& o, const OracleGate& g, OracleVector v);
OracleVector apply_layer(const Oracle& o, const OracleLayer& l, OracleVector v);

enum class KsPart { kElectric, kMagnetic };

// Named layers: any fermionic layer name, "fermionic", "electric", or "magnetic_exact".
DenseOperator dense_step(const Oracle& o, const std::string& name, const StepConfig& cfg, const OracleBasis& basis);
Eigen::MatrixXcd ks_hamiltonian(const Oracle& o, KsPart part, const StepConfig& cfg, const OracleBasis& basis);
// exp(i theta (P + P^dagger)) for one plaquette.
Eigen::MatrixXcd dense_plaquette_exponential(const Oracle& o, PlaquetteAddress p, double theta, const OracleBasis& basis);

std::vector<Operator> all_plaquette_operators(const Oracle& o);

}  // namespace qedqca
