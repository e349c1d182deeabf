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

#include <cstdio>
#include <string>
#include <vector>

#include "qedqca/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double max_seconds;  // <= 0 means no runtime limit
};

const std::vector<Criterion> kCriteria = {
    {1, "algebra", "operator algebra on 2x2 (2D) and 2x2x2 (3D), k=2", 30},
    {2, "locality", "hopping and plaquette support, fast gates equal oracle columns", 60},
    {3, "gauge", "sub-steps commute with gauge transforms, sectors conserved over 100 steps", 60},
    {4, "magnetic", "fourier vs dense, plaquette eigenvalues, qwsplit eps^4 scaling, [P_a,P_b]=0", 60},
    {5, "trotter", "electric step exact, pure-gauge defect ratio ~16", 120},
    {6, "dirac-convergence", "walk converges to the Dirac step in 2D and 3D", 5},
    {7, "causality", "single particle stays inside the light cone on 6x6, k=2", 120},
    {8, "exchange", "fermionic exchange phases and extension rule", 0},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    qedqca::SuiteReport r = qedqca::run_suite(c.suite);
    bool in_time = c.max_seconds <= 0 || r.seconds < c.max_seconds;
    bool ok = r.pass() && in_time;
    if (!ok) ++failed;
    std::string limit = c.max_seconds > 0 ? " < " + std::to_string(static_cast<int>(c.max_seconds)) + " s" : "";
    std::printf("%s criterion %d [%s]: %s (%.1f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.suite, c.title, r.seconds,
                limit.c_str());
    for (const auto& chk : r.checks) {
      if (!chk.pass) std::printf("    failed check %s: measured %.6g, tolerance %s\n", chk.check.c_str(), chk.measured,
                                 chk.tolerance.c_str());
    }
    if (!in_time) std::printf("    runtime limit exceeded\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(kCriteria.size()) - failed, kCriteria.size());
  return failed == 0 ? 0 : 1;
}
