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

#include "qedqca/observables.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qedqca/evolution.hpp"
#include "qedqca/jw_oracle.hpp"
#include "qedqca/stateprep.hpp"

using namespace qedqca;

TEST(occupation, examples) {
  Lattice lat(2, {2, 2}, 2);
  SparseState sea = dirac_sea(lat);
  EXPECT_EQ(occupation(sea, 1, 1), 1.0);
  EXPECT_EQ(occupation(sea, 1, 0), 0.0);
  SparseState v = vacuum(lat);
  EXPECT_EQ(occupation(v, 0, 0), 0.0);
  BasisConfig one = v.layout().empty();
  one.set_bit(v.layout().fermion_bit(0, 0), true);
  v.add(one, 1.0);
  v.scale(1 / v.norm());
  EXPECT_NEAR(occupation(v, 0, 0), 0.5, 1e-15);
}


TEST(occupation, all_sites_match_single_site) {
  Lattice lat(2, {3, 2}, 2);
  SparseState s = pair_create(dirac_sea(lat), 1);
  full_step(s, StepConfig::locked(2, 1.0, 0.3, 1.0));
  std::vector<double> occ = occupations(s);
  ASSERT_EQ(occ.size(), static_cast<std::size_t>(lat.site_count() * lat.d_modes()));
  for (int x = 0; x < lat.site_count(); ++x)
    for (int j = 0; j < lat.d_modes(); ++j) EXPECT_NEAR(occ[x * lat.d_modes() + j], occupation(s, x, j), 1e-14);
}

TEST(electric_expectation, examples) {
  Lattice lat(2, {3, 3}, 4);
  SparseState v = vacuum(lat);
  EXPECT_EQ(electric_expectation(v, {0, {0, 1}}), 0.0);
  BasisConfig c = v.layout().empty();
  v.layout().set_link_value(c, lat.link_index({4, 1}), 1);
  SparseState s(lat);
  s.add(c, 1.0);
  EXPECT_EQ(electric_expectation(s, {4, {1, +1}}), 1.0);
  EXPECT_EQ(electric_expectation(s, {lat.shift(4, {1, 1}), {1, -1}}), -1.0);
  EXPECT_NEAR(electric_energy(s, 1.3, 0.4), 1.3 * 1.3 * 0.4 / 2, 1e-15);
  EXPECT_EQ(electric_energy(vacuum(lat), 1.3, 0.4), 0.0);
}

TEST(electric_expectation, loop_orientation) {
  Lattice lat(2, {3, 3}, 4);
  PlaquetteAddress p{4, {0, 1}};
  SparseState s = loop_create(vacuum(lat), plaquette_loop(lat, p));
  Direction mu{0, 1}, nu{1, 1};
  int x = 4;
  EXPECT_EQ(electric_expectation(s, {x, mu}), 1.0);
  EXPECT_EQ(electric_expectation(s, {lat.shift(x, mu), nu}), 1.0);
  EXPECT_EQ(electric_expectation(s, {lat.shift(x, nu), mu}), -1.0);
  EXPECT_EQ(electric_expectation(s, {x, nu}), -1.0);
}

TEST(plaquette_expectation, vacuum_is_zero) {
  Lattice lat(2, {2, 2}, 4);
  EXPECT_EQ(plaquette_expectation(vacuum(lat), {0, {0, 1}}), cplx(0, 0));
}

// Orbit sums of P^n on one plaquette are eigenstates with eigenvalue exp(2 pi i p / k).
TEST(plaquette_expectation, eigenstates) {
  for (int k : {2, 4, 6}) {
    Lattice lat(2, {3, 3}, k);
    ConfigLayout layout(lat);
    PlaquetteAddress p{4, {0, 1}};
    PlaquetteBlock b = plaquette_block(lat, p);
    BasisConfig c0 = layout.empty();
    c0.set_bit(layout.fermion_bit(4, 1), true);
    c0.set_bit(layout.fermion_bit(5, 0), true);
    for (int q = 0; q < k; ++q) {
      cplx lambda = std::exp(cplx(0, 2 * std::numbers::pi * q / k));
      SparseState s(lat);
      BasisConfig c = c0;
      cplx amp = 1.0;
      for (int n = 0; n < k; ++n) {
        s.add(c, amp);
        amp *= double(plaquette_sign(layout, b, c)) / lambda;
        c = plaquette_shift(layout, b, c, 1);
      }
      ASSERT_EQ(c, c0);
      ASSERT_NEAR(std::abs(amp - 1.0), 0, 1e-12) << "orbit sign";
      s.scale(1 / s.norm());
      EXPECT_NEAR(std::abs(plaquette_expectation(s, p) - lambda), 0, 1e-12) << k << " " << q;
    }
  }
}

TEST(gauss_report, examples) {
  Lattice lat(2, {2, 2}, 4);
  EXPECT_EQ(gauss_report(dirac_sea(lat)).sectors[0].f, std::vector<int>(4, 1));
  EXPECT_EQ(gauss_report(vacuum(lat)).sectors[0].f, std::vector<int>(4, 0));
}

TEST(observables, gauge_invariant) {
  Lattice lat(2, {2, 2}, 4);
  SparseState s = loop_create(pair_create(dirac_sea(lat), 1), plaquette_loop(lat, {0, {0, 1}}));
  full_step(s, StepConfig::locked(4, 1.0, 0.3, 0.7));
  GaugePhaseField f{{0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2}};
  SparseState g = gauge_transform(s, f);
  EXPECT_NEAR(occupation(s, 1, 0), occupation(g, 1, 0), 1e-14);
  EXPECT_NEAR(electric_expectation(s, {1, {0, 1}}), electric_expectation(g, {1, {0, 1}}), 1e-14);
  EXPECT_NEAR(std::abs(plaquette_expectation(s, {0, {0, 1}}) - plaquette_expectation(g, {0, {0, 1}})), 0, 1e-14);
}
