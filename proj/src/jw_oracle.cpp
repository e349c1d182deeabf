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
#include <deque>
#include <limits>
#include <stdexcept>

#include "qedqca/gates.hpp"

namespace qedqca {

namespace {
const cplx kI(0, 1);

Factor adjoint_factor(Factor f) {
  switch (f.kind) {
    case FactorKind::kLower: f.kind = FactorKind::kRaise; break;
    case FactorKind::kRaise: f.kind = FactorKind::kLower; break;
    case FactorKind::kCreate: f.kind = FactorKind::kAnnihilate; break;
    case FactorKind::kAnnihilate: f.kind = FactorKind::kCreate; break;
    default: break;
  }
  return f;
}
}  // namespace

Operator Operator::operator*(const Operator& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const Term& x : terms_) {
    for (const Term& y : o.terms_) {
      Term t{x.coeff * y.coeff, x.word};
      t.word.insert(t.word.end(), y.word.begin(), y.word.end());
      out.push_back(std::move(t));
    }
  }
  return Operator(std::move(out));
}

Operator Operator::operator+(const Operator& o) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return Operator(std::move(out));
}

Operator Operator::operator-(const Operator& o) const { return *this + cplx(-1, 0) * o; }

Operator operator*(cplx s, const Operator& o) {
  Operator r = o;
  for (Term& t : r.terms_) t.coeff *= s;
  return r;
}

Operator Operator::adjoint() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Term a{std::conj(t.coeff), {}};
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) a.word.push_back(adjoint_factor(*it));
    out.push_back(std::move(a));
  }
  return Operator(std::move(out));
}

Oracle::Oracle(const Lattice& lat) : lat_(lat), k_(lat.k()) {}

Operator Oracle::z_string(int lo, int hi) const {
  if (lo > hi) std::swap(lo, hi);
  return Operator::factor({FactorKind::kZString, lo, hi});
}

Operator Oracle::r(HalfLinkId h) const { return Operator::factor({FactorKind::kLower, rank(lat_.half_link_dof(h))}); }

Operator Oracle::a_dag(int site, int j) const {
  int rk = rank(lat_.mode_dof(site, j));
  return Operator::factor({FactorKind::kCreate, rk}) * z_string(0, rk);
}

Operator Oracle::a(int site, int j) const { return a_dag(site, j).adjoint(); }

Operator Oracle::number(int site, int j) const {
  return Operator::factor({FactorKind::kNumber, rank(lat_.mode_dof(site, j))});
}

Operator Oracle::hole(int site, int j) const {
  return Operator::factor({FactorKind::kHole, rank(lat_.mode_dof(site, j))});
}

Operator Oracle::s(HalfLinkId h) const {
  int rk = rank(lat_.half_link_dof(h));
  return r(h) * z_string(0, rk);
}

Operator Oracle::s_dag(HalfLinkId h) const { return s(h).adjoint(); }

Operator Oracle::V(HalfLinkId h) const {
  HalfLinkId other{lat_.shift(h.site, h.dir), -h.dir};
  return s(h) * s_dag(other);
}

Operator Oracle::U(HalfLinkId h) const {
  HalfLinkId other{lat_.shift(h.site, h.dir), -h.dir};
  return r(h) * r(other).adjoint();
}

Operator Oracle::E(HalfLinkId h) const {
  return Operator::factor({FactorKind::kElectric, rank(lat_.half_link_dof(h))});
}

Operator Oracle::corner(int site, Direction eta, Direction zeta) const {
  return s_dag({site, zeta}) * s({site, eta});
}

Operator Oracle::plaquette(PlaquetteAddress p) const {
  Direction eta{p.plane.eta, +1}, zeta{p.plane.zeta, +1};
  int x = p.site, xe = lat_.shift(x, eta), xz = lat_.shift(x, zeta);
  return V({x, eta}) * V({xe, zeta}) * V({xz, eta}).adjoint() * V({x, zeta}).adjoint();
}

Operator Oracle::plaquette_from_corners(PlaquetteAddress p) const {
  Direction eta{p.plane.eta, +1}, zeta{p.plane.zeta, +1};
  int x = p.site, xe = lat_.shift(x, eta), xz = lat_.shift(x, zeta), xez = lat_.shift(xe, zeta);
  return cplx(-1, 0) * corner(xe, zeta, -eta) * corner(xez, -eta, -zeta) * corner(xz, -zeta, eta) *
         corner(x, eta, zeta);
}

Operator Oracle::mass_term(int site, int j, int kmode) const { return a_dag(site, j) * a(site, kmode); }

Operator Oracle::hopping_term(int site, int axis, int j, int kmode) const {
  Direction eta{axis, +1};
  return a_dag(lat_.shift(site, eta), j) * V({site, eta}).adjoint() * a(site, kmode);
}

Operator Oracle::hop_gate(int site, int axis, int from_mode, int to_mode) const {
  int y = lat_.shift(site, Direction{axis, +1});
  Operator fwd = hopping_term(site, axis, to_mode, from_mode);
  return hole(site, from_mode) * hole(y, to_mode) - number(site, from_mode) * number(y, to_mode) + fwd +
         fwd.adjoint();
}

Operator Oracle::pair_gate(int site, int lo, const Eigen::Matrix4cd& g) const {
  int hi = lo + 1;
  Operator out;
  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      cplx v = g(row, col);
      if (v == cplx{}) continue;
      Operator t;
      if (row == col) {
        t = ((row >> 1) ? number(site, hi) : hole(site, hi)) * ((row & 1) ? number(site, lo) : hole(site, lo));
      } else if (row == 2 && col == 1) {
        t = a_dag(site, hi) * a(site, lo);
      } else if (row == 1 && col == 2) {
        t = a_dag(site, lo) * a(site, hi);
      } else {
        throw std::invalid_argument("pair_gate: matrix does not conserve the particle number");
      }
      out = out + v * t;
    }
  }
  return out;
}

int Oracle::electric_value(const OracleConfig& c, int rk) const {
  DofId d = lat_.dof_at_rank(rk);
  HalfLinkId h = lat_.half_link_of(d);
  int w = c.v[rk];
  if (h.dir.positive()) return symmetric_rep(w, k_);
  return -symmetric_rep((k_ - w) % k_, k_);
}

bool Oracle::apply_word(const OpWord& w, OracleConfig& c, cplx& coeff) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Factor& f = *it;
    std::uint8_t& v = c.v[f.a];
    switch (f.kind) {
      case FactorKind::kZString: {
        int p = 0;
        for (int r = f.a; r < f.b; ++r) p ^= c.v[r] & 1;
        if (p) coeff = -coeff;
        break;
      }
      case FactorKind::kLower: v = static_cast<std::uint8_t>((v + k_ - 1) % k_); break;
      case FactorKind::kRaise: v = static_cast<std::uint8_t>((v + 1) % k_); break;
      case FactorKind::kCreate:
        if (v) return false;
        v = 1;
        break;
      case FactorKind::kAnnihilate:
        if (!v) return false;
        v = 0;
        break;
      case FactorKind::kNumber:
        if (!v) return false;
        break;
      case FactorKind::kHole:
        if (v) return false;
        break;
      case FactorKind::kElectric: {
        int e = electric_value(c, f.a);
        if (e == 0) return false;
        coeff *= static_cast<double>(e);
        break;
      }
    }
  }
  return true;
}

OracleVector Oracle::apply(const Operator& op, const OracleConfig& c) const {
  return apply(op, OracleVector{{c, cplx(1, 0)}});
}

OracleVector Oracle::apply(const Operator& op, const OracleVector& in) const {
  absl::flat_hash_map<OracleConfig, cplx, OracleConfigHash> acc;
  std::vector<OracleConfig> order;
  for (const auto& [c, amp] : in) {
    for (const Term& t : op.terms()) {
      OracleConfig out = c;
      cplx coeff = amp * t.coeff;
      if (!apply_word(t.word, out, coeff)) continue;
      auto [it, inserted] = acc.try_emplace(out, coeff);
      if (inserted) order.push_back(std::move(out));
      else it->second += coeff;
    }
  }
  OracleVector result;
  for (auto& c : order) {
    cplx v = acc[c];
    if (std::abs(v) > 1e-15) result.push_back({std::move(c), v});
  }
  return result;
}

OracleConfig Oracle::embed(const ConfigLayout& layout, const BasisConfig& b) const {
  OracleConfig c;
  c.v.assign(dof_count(), 0);
  for (int x = 0; x < lat_.site_count(); ++x) {
    for (int j = 0; j < lat_.d_modes(); ++j) c.v[rank(lat_.mode_dof(x, j))] = layout.occupied(b, x, j);
  }
  for (int l = 0; l < lat_.link_count(); ++l) {
    LinkId id = lat_.link(l);
    Direction eta{id.axis, +1};
    int val = layout.link_value(b, l);
    c.v[rank(lat_.half_link_dof({id.site, eta}))] = static_cast<std::uint8_t>(val);
    c.v[rank(lat_.half_link_dof({lat_.shift(id.site, eta), -eta}))] = static_cast<std::uint8_t>((k_ - val) % k_);
  }
  return c;
}

bool Oracle::is_restricted(const OracleConfig& c) const {
  for (int l = 0; l < lat_.link_count(); ++l) {
    LinkId id = lat_.link(l);
    Direction eta{id.axis, +1};
    int a = c.v[rank(lat_.half_link_dof({id.site, eta}))];
    int b = c.v[rank(lat_.half_link_dof({lat_.shift(id.site, eta), -eta}))];
    if ((a + b) % k_ != 0) return false;
  }
  return true;
}

BasisConfig Oracle::restrict(const ConfigLayout& layout, const OracleConfig& c) const {
  if (!is_restricted(c)) throw std::logic_error("oracle config leaves the opposite-sign subspace");
  BasisConfig b = layout.empty();
  for (int x = 0; x < lat_.site_count(); ++x) {
    for (int j = 0; j < lat_.d_modes(); ++j) b.set_bit(layout.fermion_bit(x, j), c.v[rank(lat_.mode_dof(x, j))]);
  }
  for (int l = 0; l < lat_.link_count(); ++l) {
    LinkId id = lat_.link(l);
    layout.set_link_value(b, l, c.v[rank(lat_.half_link_dof({id.site, Direction{id.axis, +1}}))]);
  }
  return b;
}

OracleConfig Oracle::random_split_config(std::mt19937_64& rng) const {
  OracleConfig c;
  c.v.assign(dof_count(), 0);
  for (int r = 0; r < dof_count(); ++r) {
    int bound = lat_.is_mode(lat_.dof_at_rank(r)) ? 2 : k_;
    c.v[r] = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, bound - 1)(rng));
  }
  return c;
}

OracleConfig Oracle::random_restricted_config(std::mt19937_64& rng) const {
  ConfigLayout layout(lat_);
  std::vector<int> occ(layout.fermion_bit_count()), vals(lat_.link_count());
  for (int& o : occ) o = std::uniform_int_distribution<int>(0, 1)(rng);
  for (int& v : vals) v = std::uniform_int_distribution<int>(0, k_ - 1)(rng);
  return embed(layout, layout.encode(occ, vals));
}

std::vector<OracleConfig> Oracle::restricted_configs(std::size_t cap) const {
  ConfigLayout layout(lat_);
  int nf = layout.fermion_bit_count(), nl = lat_.link_count();
  double total = std::pow(2.0, nf) * std::pow(static_cast<double>(k_), nl);
  if (total > static_cast<double>(cap)) throw std::length_error("restricted space exceeds the oracle cap");
  std::vector<OracleConfig> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> occ(nf, 0), vals(nl, 0);
  for (std::size_t n = 0; n < static_cast<std::size_t>(total); ++n) {
    std::size_t m = n;
    for (int i = 0; i < nf; ++i, m >>= 1) occ[i] = m & 1;
    for (int l = 0; l < nl; ++l, m /= k_) vals[l] = static_cast<int>(m % k_);
    out.push_back(embed(layout, layout.encode(occ, vals)));
  }
  return out;
}

SparseState Oracle::apply(const Operator& op, const SparseState& state) const {
  const ConfigLayout& layout = state.layout();
  SparseState out(state.lattice(), state.tolerance());
  for (const auto& [cfg, amp] : state.sorted()) {
    for (const auto& [oc, v] : apply(op, embed(layout, cfg))) out.add(restrict(layout, oc), amp * v);
  }
  out.prune();
  return out;
}

std::vector<int> Oracle::site_charges(const OracleConfig& c) const {
  std::vector<int> q(lat_.site_count(), 0);
  for (int r = 0; r < dof_count(); ++r) {
    DofId d = lat_.dof_at_rank(r);
    q[d.site] += lat_.is_mode(d) ? c.v[r] : electric_value(c, r);
  }
  return q;
}

OracleBasis::OracleBasis(std::vector<OracleConfig> configs) : configs_(std::move(configs)) {
  for (std::size_t i = 0; i < configs_.size(); ++i) index_.emplace(configs_[i], static_cast<int>(i));
}

std::optional<int> OracleBasis::index(const OracleConfig& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

OracleBasis OracleBasis::closure(const Oracle& o, const std::vector<OracleConfig>& seeds,
                                 const std::vector<Operator>& ops, std::size_t cap) {
  std::vector<Operator> all = ops;
  for (const Operator& op : ops) all.push_back(op.adjoint());
  std::vector<OracleConfig> configs;
  absl::flat_hash_map<OracleConfig, int, OracleConfigHash> seen;
  std::deque<OracleConfig> todo;
  auto visit = [&](const OracleConfig& c) {
    if (seen.emplace(c, 0).second) {
      if (configs.size() >= cap) throw std::length_error("oracle basis closure exceeds the dimension cap");
      configs.push_back(c);
      todo.push_back(c);
    }
  };
  for (const auto& s : seeds) visit(s);
  while (!todo.empty()) {
    OracleConfig c = todo.front();
    todo.pop_front();
    for (const Operator& op : all) {
      for (const auto& [out, v] : o.apply(op, c)) visit(out);
    }
  }
  return OracleBasis(std::move(configs));
}

Eigen::MatrixXcd DenseOperator::to_dense() const {
  if (!perm) return dense;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    if ((*perm)[c].first >= 0) m((*perm)[c].first, c) = (*perm)[c].second;
  }
  return m;
}

DenseOperator materialize(const Oracle& o, const Operator& op, const OracleBasis& basis) {
  DenseOperator d;
  d.dim = static_cast<int>(basis.size());
  if (basis.size() > kPermutationCap) throw std::length_error("operator dimension exceeds the permutation cap");
  std::vector<OracleVector> cols(basis.size());
  bool perm = true;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    cols[c] = o.apply(op, basis[c]);
    if (cols[c].size() > 1) perm = false;
  }
  auto row_of = [&](const OracleConfig& c) {
    auto i = basis.index(c);
    if (!i) throw std::out_of_range("operator maps a basis state outside the basis");
    return *i;
  };
  if (perm) {
    d.perm.emplace(basis.size(), std::pair<int, cplx>{-1, cplx{}});
    for (std::size_t c = 0; c < basis.size(); ++c) {
      if (!cols[c].empty()) (*d.perm)[c] = {row_of(cols[c][0].first), cols[c][0].second};
    }
    return d;
  }
  if (basis.size() > kDenseCap) throw std::length_error("operator dimension exceeds the dense cap");
  d.dense = Eigen::MatrixXcd::Zero(d.dim, d.dim);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    for (const auto& [out, v] : cols[c]) d.dense(row_of(out), static_cast<int>(c)) += v;
  }
  return d;
}

double gauge_phase(const Oracle& o, const OracleConfig& c, const GaugePhaseField& f) {
  std::vector<int> q = o.site_charges(c);
  double s = 0;
  for (std::size_t x = 0; x < q.size(); ++x) s += f.phi[x] * q[x];
  return s;
}

DenseOperator dense_gauge_transform(const Oracle& o, const GaugePhaseField& f, const OracleBasis& basis) {
  DenseOperator d;
  d.dim = static_cast<int>(basis.size());
  d.perm.emplace();
  for (std::size_t c = 0; c < basis.size(); ++c) {
    d.perm->push_back({static_cast<int>(c), std::exp(kI * gauge_phase(o, basis[c], f))});
  }
  return d;
}

SparseState gauge_transform(const SparseState& state, const GaugePhaseField& f) {
  const ConfigLayout& layout = state.layout();
  const Lattice& lat = state.lattice();
  SparseState out = state;
  for (auto& [c, amp] : out.entries()) {
    double s = 0;
    for (int x = 0; x < lat.site_count(); ++x) {
      int q = 0;
      for (int j = 0; j < lat.d_modes(); ++j) q += layout.occupied(c, x, j);
      for (int a = 0; a < lat.spatial_dim(); ++a) {
        for (int sg : {-1, +1}) q += half_link_electric(layout, c, {x, Direction{a, sg}});
      }
      s += f.phi[x] * q;
    }
    amp *= std::exp(kI * s);
  }
  return out;
}

Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd ph = (kI * t * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd gamma_matrix(int mu, int spatial_dim) {
  Eigen::Matrix2cd x, y, z, id;
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  id.setIdentity();
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::MatrixXcd m(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return m;
  };
  if (spatial_dim == 2) {
    switch (mu) {
      case 0: return y;
      case 1: return x;
      case 2: return z;
    }
  } else if (spatial_dim == 3) {
    switch (mu) {
      case 0: return kron(y, id);
      case 1: return kron(z, x);
      case 2: return kron(z, y);
      case 3: return kron(z, z);
    }
  }
  throw std::invalid_argument("gamma index out of range");
}

Eigen::MatrixXcd qw_momentum_step(const std::vector<double>& kvec, double eps, double m, int spatial_dim) {
  if (static_cast<int>(kvec.size()) != spatial_dim) throw std::invalid_argument("kvec needs one entry per axis");
  GateParams p{eps, m};
  if (spatial_dim == 2) {
    auto disp = [&](double k) {
      Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
      d(0, 0) = std::exp(kI * eps * k);
      d(1, 1) = std::exp(-kI * eps * k);
      return d;
    };
    Eigen::MatrixXcd h = qw_onsite(OnsiteKind::kHadamardMu, p);
    return qw_onsite(OnsiteKind::kMass2d, p) * disp(kvec[1]) * h * disp(kvec[0]) * h.adjoint();
  }
  auto disp = [&](double k) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d(0, 0) = d(1, 1) = std::exp(kI * eps * k);
    d(2, 2) = d(3, 3) = std::exp(-kI * eps * k);
    return d;
  };
  const OnsiteKind basis[3] = {OnsiteKind::kHMu, OnsiteKind::kHNu, OnsiteKind::kHKappa};
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
  for (int axis : {2, 1, 0}) {
    Eigen::MatrixXcd b = qw_onsite(basis[axis], p);
    u = b.adjoint() * disp(kvec[axis]) * b * u;
  }
  return qw_onsite(OnsiteKind::kMass3d, p) * u;
}

Eigen::MatrixXcd continuum_momentum_step(const std::vector<double>& kvec, double eps, double m, int spatial_dim) {
  int n = spatial_dim == 2 ? 2 : 4;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < spatial_dim; ++a) h += kvec[a] * gamma_matrix(a + 1, spatial_dim);
  h -= m * gamma_matrix(0, spatial_dim);
  return expi_hermitian(h, eps);
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

ConvergenceFit convergence_order(const std::vector<double>& kvec, double m, const std::vector<double>& eps,
                                 int spatial_dim) {
  ConvergenceFit fit;
  fit.eps = eps;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double e : eps) {
    double d = spectral_norm(qw_momentum_step(kvec, e, m, spatial_dim) - continuum_momentum_step(kvec, e, m, spatial_dim));
    fit.defect.push_back(d);
    if (d <= 1e-13) continue;
    double x = std::log(e), y = std::log(d);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  if (n < 2) {
    fit.order = std::numeric_limits<double>::infinity();
  } else {
    fit.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return fit;
}

}  // namespace qedqca
