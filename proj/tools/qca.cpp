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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "qedqca/jw_oracle.hpp"
#include "qedqca/run_config.hpp"
#include "qedqca/verify.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output, const std::string& snapshot_prefix) {
  using namespace qedqca;
  try {
    RunConfig rc = load_run_config(config_path);
    if (!output.empty()) rc.output = output;
    if (!snapshot_prefix.empty()) rc.snapshot_prefix = snapshot_prefix;
    std::ofstream csv(rc.output);
    if (!csv) {
      std::cerr << "error: cannot write '" << rc.output << "'\n";
      return 2;
    }
    RunHooks hooks;
    hooks.snapshot = [&](int step, const SparseState& s) {
      std::string path = rc.snapshot_prefix + "_" + std::to_string(step) + ".snap";
      std::ofstream os(path);
      if (!os) throw std::runtime_error("cannot write snapshot '" + path + "'");
      write_snapshot(os, s);
    };
    run_simulation(rc, csv, hooks);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

int cmd_verify(const std::string& suite, const std::string& json_path) {
  using namespace qedqca;
  std::vector<SuiteReport> reports;
  try {
    reports = run_suites(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::string json = report_json(reports);
  if (json_path.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream(json_path) << json << '\n';
  }
  bool ok = true;
  for (const auto& r : reports) {
    std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.suite << " (" << std::fixed << std::setprecision(1) << r.seconds
              << " s)\n";
    for (const auto& c : r.checks)
      if (!c.pass) std::cerr << "  failed " << c.check << ": measured " << c.measured << ", want " << c.tolerance << '\n';
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}

int cmd_convergence(const std::vector<double>& kvec, double mass, const std::vector<double>& eps) {
  using namespace qedqca;
  if (kvec.size() != 2 && kvec.size() != 3) {
    std::cerr << "error: --k needs 2 or 3 components\n";
    return 2;
  }
  if (eps.size() < 3) {
    std::cerr << "error: --eps needs at least 3 values\n";
    return 2;
  }
  ConvergenceFit fit = convergence_order(kvec, mass, eps, static_cast<int>(kvec.size()));
  std::cout << "epsilon,defect\n" << std::setprecision(17);
  for (std::size_t i = 0; i < fit.eps.size(); ++i) std::cout << fit.eps[i] << ',' << fit.defect[i] << '\n';
  std::cout << "order," << fit.order << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum cellular automaton for lattice QED"};
  app.require_subcommand(1);

  std::string config, output, snapshot_prefix;
  auto* run = app.add_subcommand("run", "Evolve a configured state and write observables");
  run->add_option("config", config, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output, "Observables CSV (overrides the config)");
  run->add_option("--snapshot-prefix", snapshot_prefix, "Snapshot path prefix (overrides the config)");

  std::string suite, json_path;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::vector<std::string> choices = qedqca::suite_names();
  choices.push_back("all");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(choices));
  verify->add_option("--json", json_path, "Write the JSON report here instead of stdout");

  std::vector<double> kvec, eps;
  double mass = 0;
  auto* conv = app.add_subcommand("convergence", "Momentum-space convergence of the Dirac walk");
  conv->add_option("--k", kvec, "Momentum components, 2 or 3 values")->required()->delimiter(',');
  conv->add_option("--mass", mass, "Mass")->default_val(0.0);
  conv->add_option("--eps", eps, "Lattice spacings")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  if (*run) return cmd_run(config, output, snapshot_prefix);
  if (*verify) return cmd_verify(suite, json_path);
  return cmd_convergence(kvec, mass, eps);
}
