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

namespace qedqca {

struct CheckResult {
  std::string check;
  bool pass = false;
  double measured = 0;
  std::string tolerance;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool pass() const;
};

// algebra, locality, gauge, magnetic, trotter, dirac-convergence, causality, exchange.
const std::vector<std::string>& suite_names();

SuiteReport run_suite(const std::string& name);

// "all" expands to every suite; anything else runs one suite.
std::vector<SuiteReport> run_suites(const std::string& name);

std::string report_json(const std::vector<SuiteReport>& reports);

}  // namespace qedqca
