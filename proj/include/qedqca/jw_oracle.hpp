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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "absl/container/flat_hash_map.h"
#include "absl/container/inlined_vector.h"
#include "qedqca/fock.hpp"
#include "qedqca/lattice.hpp"

namespace qedqca {

// One value per dof in global JW order: occupation for modes, residue mod k for every
// half-link (both ends of a link carry their own register here).
struct OracleConfig {
  absl::InlinedVector<std::uint8_t, 96> v;
  bool operator==(const OracleConfig& o) const { return v == o.v; }
};

struct OracleConfigHash {
  std::size_t operator()(const OracleConfig& c) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : c.v) h = (h ^ b) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

enum class FactorKind { kZString, kLower, kRaise, kCreate, kAnnihilate, kNumber, kHole, kElectric };

struct Factor {
  FactorKind kind;
  int a = 0;  // rank (or interval start)
  int b = 0;  // interval end for kZString
};

// Operator product written left to right; the rightmost factor acts first.
using OpWord = std::vector<Factor>;

struct Term {
  cplx coeff{1, 0};
  OpWord word;
};

class Operator {
 public:
  Operator() = default;
  explicit Operator(std::vector<Term> terms) : terms_(std::move(terms)) {}
  static Operator identity() { return Operator({Term{}}); }
  static Operator factor(Factor f) { return Operator({Term{{1, 0}, {f}}}); }

  const std::vector<Term>& terms() const { return terms_; }
  Operator operator*(const Operator& o) const;
  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator adjoint() const;
  friend Operator operator*(cplx s, const Operator& o);

 private:
  std::vector<Term> terms_;
};

using OracleVector = std::vector<std::pair<OracleConfig, cplx>>;

class Oracle {
 public:
  explicit Oracle(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  int rank(DofId d) const { return lat_.jw_rank(d); }
  int dof_count() const { return lat_.dof_count(); }

  // Primitive operators, literally from their JW definitions.
  Operator z_string(int lo_rank, int hi_rank) const;
  Operator r(HalfLinkId h) const;
  Operator a(int site, int j) const;
  Operator a_dag(int site, int j) const;
  Operator number(int site, int j) const;
  Operator hole(int site, int j) const;
  Operator s(HalfLinkId h) const;
  Operator s_dag(HalfLinkId h) const;
  Operator V(HalfLinkId h) const;
  Operator U(HalfLinkId h) const;
  Operator E(HalfLinkId h) const;
  Operator corner(int site, Direction eta, Direction zeta) const;
  Operator plaquette(PlaquetteAddress p) const;
  Operator plaquette_from_corners(PlaquetteAddress p) const;
  Operator mass_term(int site, int j, int kmode) const;
  Operator hopping_term(int site, int axis, int j, int kmode) const;

  // Local gates written as fermion expressions.
  Operator hop_gate(int site, int axis, int from_mode, int to_mode) const;
  Operator pair_gate(int site, int lo_mode, const Eigen::Matrix4cd& g) const;

  // Word application; returns false when the word annihilates the config.
  bool apply_word(const OpWord& w, OracleConfig& c, cplx& coeff) const;
  OracleVector apply(const Operator& op, const OracleConfig& c) const;
  OracleVector apply(const Operator& op, const OracleVector& v) const;

  OracleConfig embed(const ConfigLayout& layout, const BasisConfig& c) const;
  bool is_restricted(const OracleConfig& c) const;
  BasisConfig restrict(const ConfigLayout& layout, const OracleConfig& c) const;
  OracleConfig random_split_config(std::mt19937_64& rng) const;
  OracleConfig random_restricted_config(std::mt19937_64& rng) const;
  std::vector<OracleConfig> restricted_configs(std::size_t cap = 1u << 20) const;

  SparseState apply(const Operator& op, const SparseState& state) const;

  int electric_value(const OracleConfig& c, int rank) const;
  std::vector<int> site_charges(const OracleConfig& c) const;

 private:
  Lattice lat_;
  int k_;
};

class OracleBasis {
 public:
  explicit OracleBasis(std::vector<OracleConfig> configs);
  // All configs reachable from the seeds under the given operators (and their adjoints).
  static OracleBasis closure(const Oracle& o, const std::vector<OracleConfig>& seeds,
                             const std::vector<Operator>& ops, std::size_t cap = 4096);
  std::size_t size() const { return configs_.size(); }
  const OracleConfig& operator[](std::size_t i) const { return configs_[i]; }
  std::optional<int> index(const OracleConfig& c) const;

 private:
  std::vector<OracleConfig> configs_;
  absl::flat_hash_map<OracleConfig, int, OracleConfigHash> index_;
};

struct DenseOperator {
  int dim = 0;
  // Generalized permutation: per column (row, coeff); row -1 for a zero column.
  std::optional<std::vector<std::pair<int, cplx>>> perm;
  Eigen::MatrixXcd dense;

  Eigen::MatrixXcd to_dense() const;
};

inline constexpr std::size_t kDenseCap = 4096;
inline constexpr std::size_t kPermutationCap = 1000000;

DenseOperator materialize(const Oracle& o, const Operator& op, const OracleBasis& basis);

struct GaugePhaseField {
  std::vector<double> phi;  // per site
};

double gauge_phase(const Oracle& o, const OracleConfig& c, const GaugePhaseField& f);
DenseOperator dense_gauge_transform(const Oracle& o, const GaugePhaseField& f, const OracleBasis& basis);
SparseState gauge_transform(const SparseState& state, const GaugePhaseField& f);

Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t);

// Momentum space.
Eigen::MatrixXcd gamma_matrix(int mu, int spatial_dim);  // mu = 0 is gamma_0
Eigen::MatrixXcd qw_momentum_step(const std::vector<double>& kvec, double eps, double m, int spatial_dim);
Eigen::MatrixXcd continuum_momentum_step(const std::vector<double>& kvec, double eps, double m, int spatial_dim);
struct ConvergenceFit {
  std::vector<double> eps;
  std::vector<double> defect;
  double order = 0;
};
ConvergenceFit convergence_order(const std::vector<double>& kvec, double m, const std::vector<double>& eps,
                                 int spatial_dim);
double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace qedqca
