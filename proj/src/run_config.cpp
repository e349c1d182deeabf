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

#include "qedqca/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "qedqca/observables.hpp"
#include "qedqca/stateprep.hpp"

namespace qedqca {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits on sep, ignoring separators inside brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return out;
}

Direction parse_direction(const std::string& key, std::string s) {
  int sign = +1;
  if (!s.empty() && s[0] == '-') {
    sign = -1;
    s = s.substr(1);
  }
  static const std::map<std::string, int> axes{{"mu", 0}, {"nu", 1}, {"kappa", 2}};
  auto it = axes.find(s);
  if (it == axes.end()) throw ConfigError(key, "unknown direction '" + s + "'");
  return {it->second, sign};
}

int parse_site(const std::string& key, const Lattice& lat, const std::string& s) {
  try {
    return lat.parse_site(s);
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

Plane parse_plane(const std::string& key, const Lattice& lat, const std::string& s) {
  auto parts = split_top(s, ',');
  if (parts.size() != 2) throw ConfigError(key, "plane must be eta,zeta");
  Direction e = parse_direction(key, parts[0]), z = parse_direction(key, parts[1]);
  if (!e.positive() || !z.positive() || e.axis >= z.axis || z.axis >= lat.spatial_dim())
    throw ConfigError(key, "plane must be two increasing positive axes of the lattice");
  return {e.axis, z.axis};
}

std::string dir_name(Direction d) { return d.str(); }

std::string plane_name(Plane p) { return Direction{p.eta, +1}.str() + "," + Direction{p.zeta, +1}.str(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

RunConfig parse_run_config(std::istream& is) {
  RunConfig rc;
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno), "expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno), "missing key");
    if (!kv.emplace(key, val).second) throw ConfigError(key, "given more than once");
  }
  for (const auto& [key, v] : kv) {
    if (key == "dim") {
      rc.dim = parse_int(key, v);
      if (rc.dim != 2 && rc.dim != 3) throw ConfigError(key, "must be 2 or 3");
    } else if (key == "lattice") {
      rc.lattice.clear();
      for (const auto& part : split_top(v, 'x')) rc.lattice.push_back(parse_int(key, part));
    } else if (key == "k") {
      rc.k = parse_int(key, v);
    } else if (key == "epsilon") {
      rc.epsilon = parse_double(key, v);
    } else if (key == "mass") {
      rc.mass = parse_double(key, v);
    } else if (key == "g_electric") {
      rc.g_electric = parse_double(key, v);
    } else if (key == "g_magnetic") {
      rc.g_magnetic = parse_double(key, v);
    } else if (key == "coupling_mode") {
      if (v == "locked") rc.coupling_mode = CouplingMode::kLocked;
      else if (v == "free") rc.coupling_mode = CouplingMode::kFree;
      else throw ConfigError(key, "must be locked or free");
    } else if (key == "magnetic_formulation") {
      if (v == "fourier") rc.magnetic_formulation = MagneticFormulation::kFourier;
      else if (v == "qwsplit") rc.magnetic_formulation = MagneticFormulation::kQwSplit;
      else if (v == "exact") rc.magnetic_formulation = MagneticFormulation::kExact;
      else throw ConfigError(key, "must be fourier, qwsplit or exact");
    } else if (key == "steps") {
      rc.steps = parse_int(key, v);
      if (rc.steps < 0) throw ConfigError(key, "must be >= 0");
    } else if (key == "initial_state") {
      rc.initial_state = v;
    } else if (key == "observables") {
      rc.observables = split_top(v, ',');
    } else if (key == "snapshot_every") {
      rc.snapshot_every = parse_int(key, v);
      if (rc.snapshot_every < 0) throw ConfigError(key, "must be >= 0");
    } else if (key == "workers") {
      rc.workers = parse_int(key, v);
      if (rc.workers < 1) throw ConfigError(key, "must be >= 1");
    } else if (key == "output") {
      rc.output = v;
    } else if (key == "snapshot_prefix") {
      rc.snapshot_prefix = v;
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  if (rc.lattice.empty()) throw ConfigError("lattice", "required, e.g. lattice = 4x4");
  if (static_cast<int>(rc.lattice.size()) != rc.dim)
    throw ConfigError("lattice", "needs " + std::to_string(rc.dim) + " extents for dim = " + std::to_string(rc.dim));
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_run_config(is);
}

Lattice make_lattice(const RunConfig& rc) {
  try {
    return Lattice(rc.dim, rc.lattice, rc.k);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    throw ConfigError(msg.find("lattice") != std::string::npos ? "lattice" : "k", msg);
  }
}

StepConfig make_step_config(const RunConfig& rc) {
  StepConfig cfg;
  cfg.mass = rc.mass;
  cfg.g_electric = rc.g_electric;
  cfg.g_magnetic = rc.g_magnetic;
  cfg.k = rc.k;
  cfg.coupling_mode = rc.coupling_mode;
  cfg.magnetic_formulation = rc.magnetic_formulation;
  if (rc.coupling_mode == CouplingMode::kLocked) {
    if (rc.g_electric <= 0) throw ConfigError("g_electric", "locked mode needs g_electric > 0");
    double eps = StepConfig::locked_epsilon(rc.k, rc.g_electric);
    if (rc.epsilon && std::abs(*rc.epsilon - eps) > 1e-12 * eps) {
      std::ostringstream os;
      os << std::setprecision(17) << "locked mode requires epsilon = " << eps << " for k = " << rc.k
         << " and g_electric = " << rc.g_electric << ", got " << *rc.epsilon;
      throw ConfigError("epsilon", os.str());
    }
    cfg.epsilon = eps;
  } else {
    if (!rc.epsilon) throw ConfigError("epsilon", "required in free coupling mode");
    cfg.epsilon = *rc.epsilon;
  }
  if (cfg.epsilon <= 0) throw ConfigError("epsilon", "must be > 0");
  cfg.validate();
  return cfg;
}

SparseState make_initial_state(const RunConfig& rc, const Lattice& lat) {
  const std::string key = "initial_state";
  auto terms = split_top(rc.initial_state, '+');
  SparseState s = vacuum(lat);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string& t = terms[i];
    if (t == "vacuum" || t == "dirac_sea" || t.rfind("file:", 0) == 0) {
      if (i != 0) throw ConfigError(key, "'" + t + "' must come first");
      if (t == "dirac_sea") {
        s = dirac_sea(lat);
      } else if (t != "vacuum") {
        std::ifstream is(t.substr(5));
        if (!is) throw ConfigError(key, "cannot open '" + t.substr(5) + "'");
        try {
          s = read_snapshot(is, lat);
        } catch (const std::exception& e) {
          throw ConfigError(key, e.what());
        }
      }
      continue;
    }
    auto at = t.find('@');
    if (at == std::string::npos) throw ConfigError(key, "unknown term '" + t + "'");
    std::string op = t.substr(0, at), arg = t.substr(at + 1);
    auto semi = arg.find(';');
    if (op == "pair") {
      s = pair_create(s, parse_site(key, lat, arg));
    } else if (op == "loop") {
      if (semi == std::string::npos) throw ConfigError(key, "loop needs x;eta,zeta");
      PlaquetteAddress p{parse_site(key, lat, arg.substr(0, semi)), parse_plane(key, lat, arg.substr(semi + 1))};
      s = loop_create(s, plaquette_loop(lat, p));
    } else if (op == "particle") {
      if (semi == std::string::npos) throw ConfigError(key, "particle needs x;j");
      int j = parse_int(key, arg.substr(semi + 1));
      if (j < 0 || j >= lat.d_modes()) throw ConfigError(key, "mode out of range");
      s = string_create(s, parse_site(key, lat, arg.substr(0, semi)), j, {});
    } else {
      throw ConfigError(key, "unknown term '" + t + "'");
    }
  }
  if (s.empty()) throw ConfigError(key, "'" + rc.initial_state + "' is the zero state");
  return s;
}

std::vector<ObservableColumn> parse_observables(const Lattice& lat, const std::vector<std::string>& specs) {
  const std::string key = "observables";
  using K = ObservableColumn::Kind;
  std::vector<ObservableColumn> out;
  auto occ = [&](int x, int j) {
    out.push_back({K::kOccupation, "occ[" + lat.site_str(x) + ";" + std::to_string(j) + "]", x, j, {}, {}});
  };
  auto elec = [&](int x, Direction d) {
    out.push_back({K::kElectric, "E[" + lat.site_str(x) + ";" + dir_name(d) + "]", x, 0, d, {}});
  };
  auto plaq = [&](int x, Plane p) {
    std::string a = "[" + lat.site_str(x) + ";" + plane_name(p) + "]";
    out.push_back({K::kPlaquetteRe, "ReP" + a, x, 0, {}, p});
    out.push_back({K::kPlaquetteIm, "ImP" + a, x, 0, {}, p});
  };
  for (const auto& spec : specs) {
    if (spec.empty()) continue;
    if (spec == "Eenergy") {
      out.push_back({K::kElectricEnergy, "Eenergy", 0, 0, {}, {}});
      continue;
    }
    auto lb = spec.find('[');
    if (lb == std::string::npos || spec.back() != ']') throw ConfigError(key, "cannot parse '" + spec + "'");
    std::string name = spec.substr(0, lb), arg = spec.substr(lb + 1, spec.size() - lb - 2);
    if (arg == "*") {
      for (int x = 0; x < lat.site_count(); ++x) {
        if (name == "occ") {
          for (int j = 0; j < lat.d_modes(); ++j) occ(x, j);
        } else if (name == "E") {
          for (int a = 0; a < lat.spatial_dim(); ++a) elec(x, {a, +1});
        } else if (name == "P") {
          for (Plane p : lat.planes()) plaq(x, p);
        } else {
          throw ConfigError(key, "unknown observable '" + name + "'");
        }
      }
      continue;
    }
    auto semi = arg.find(';');
    if (semi == std::string::npos) throw ConfigError(key, "'" + spec + "' needs x;...");
    int x = parse_site(key, lat, arg.substr(0, semi));
    std::string rest = arg.substr(semi + 1);
    if (name == "occ") {
      int j = parse_int(key, rest);
      if (j < 0 || j >= lat.d_modes()) throw ConfigError(key, "mode out of range in '" + spec + "'");
      occ(x, j);
    } else if (name == "E") {
      Direction d = parse_direction(key, rest);
      if (d.axis >= lat.spatial_dim()) throw ConfigError(key, "direction out of range in '" + spec + "'");
      elec(x, d);
    } else if (name == "P") {
      plaq(x, parse_plane(key, lat, rest));
    } else {
      throw ConfigError(key, "unknown observable '" + name + "'");
    }
  }
  return out;
}

double evaluate(const ObservableColumn& col, const SparseState& state, const StepConfig& cfg) {
  using K = ObservableColumn::Kind;
  switch (col.kind) {
    case K::kOccupation:
      return occupation(state, col.site, col.mode);
    case K::kElectric:
      return electric_expectation(state, {col.site, col.dir});
    case K::kElectricEnergy:
      return electric_energy(state, cfg.g_electric, cfg.epsilon);
    case K::kPlaquetteRe:
      return plaquette_expectation(state, {col.site, col.plane}).real();
    case K::kPlaquetteIm:
      return plaquette_expectation(state, {col.site, col.plane}).imag();
  }
  return 0;
}

void run_simulation(const RunConfig& rc, std::ostream& csv, const RunHooks& hooks) {
  Lattice lat = make_lattice(rc);
  StepConfig cfg = make_step_config(rc);
  std::vector<ObservableColumn> cols = parse_observables(lat, rc.observables);
  SparseState state = make_initial_state(rc, lat);
  const double norm0 = state.norm();

  csv << "step,t";
  for (const auto& c : cols) csv << ',' << csv_field(c.header);
  csv << '\n';
  csv << std::setprecision(17);
  auto row = [&](int step) {
    csv << step << ',' << step * cfg.epsilon;
    for (const auto& c : cols) csv << ',' << evaluate(c, state, cfg);
    csv << '\n';
  };
  auto snap = [&](int step) {
    if (hooks.snapshot && rc.snapshot_every > 0 && step % rc.snapshot_every == 0) hooks.snapshot(step, state);
  };
  row(0);
  snap(0);
  for (int step = 1; step <= rc.steps; ++step) {
    full_step(state, cfg);
    double drift = std::abs(state.norm() - norm0);
    if (drift > 1e-8) {
      std::ostringstream os;
      os << "norm drift " << drift << " exceeds 1e-8 at step " << step << " (" << state.size() << " configurations)";
      throw std::runtime_error(os.str());
    }
    row(step);
    snap(step);
  }
  csv.flush();
}

}  // namespace qedqca
