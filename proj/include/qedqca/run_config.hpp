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

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qedqca/evolution.hpp"
#include "qedqca/fock.hpp"
#include "qedqca/lattice.hpp"

namespace qedqca {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  int dim = 2;
  std::vector<int> lattice;
  int k = 4;
  std::optional<double> epsilon;
  double mass = 0;
  double g_electric = 1;
  double g_magnetic = 1;
  CouplingMode coupling_mode = CouplingMode::kLocked;
  MagneticFormulation magnetic_formulation = MagneticFormulation::kFourier;
  int steps = 10;
  // Terms joined by '+': an optional base (vacuum, dirac_sea, file:<path>) followed by
  // pair@x, loop@x;eta,zeta and particle@x;j.
  std::string initial_state = "vacuum";
  std::vector<std::string> observables{"Eenergy"};
  int snapshot_every = 0;
  int workers = 1;
  std::string output = "observables.csv";
  std::string snapshot_prefix = "snapshot";
};

// Flat "key = value" text; '#' starts a comment. Unknown or repeated keys are errors.
RunConfig parse_run_config(std::istream& is);
RunConfig load_run_config(const std::string& path);

Lattice make_lattice(const RunConfig& rc);
// Locked mode derives epsilon from (k, g_electric) when it is absent.
StepConfig make_step_config(const RunConfig& rc);
SparseState make_initial_state(const RunConfig& rc, const Lattice& lat);

struct ObservableColumn {
  enum class Kind { kOccupation, kElectric, kElectricEnergy, kPlaquetteRe, kPlaquetteIm };
  Kind kind;
  std::string header;
  int site = 0;
  int mode = 0;
  Direction dir;
  Plane plane;
};

// occ[x;j], E[x;eta], Eenergy, P[x;eta,zeta]; occ[*], E[*] and P[*] expand over the lattice.
std::vector<ObservableColumn> parse_observables(const Lattice& lat, const std::vector<std::string>& specs);
double evaluate(const ObservableColumn& col, const SparseState& state, const StepConfig& cfg);

struct RunHooks {
  std::function<void(int step, const SparseState&)> snapshot;
};

// Writes the CSV header and one row per step including t = 0. Throws std::runtime_error
// when the norm drifts by more than 1e-8.
void run_simulation(const RunConfig& rc, std::ostream& csv, const RunHooks& hooks = {});

}  // namespace qedqca
