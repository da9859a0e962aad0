// Copyright 2026 The lcupea Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lcupea: run phase-estimation experiments, print exact spectra, and
// estimate qubit resources.
//
//   lcupea run configs/h2_successive.cfg [--bits 15] [--strategy exact_oracle] ...
//   lcupea run a.cfg b.cfg c.cfg --jobs 3
//   lcupea spectrum data/h2.ham
//   lcupea resources --n 4 --terms 15 --bits 9 --strategy permutation

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcupea/experiment.hpp"

namespace {

using lcupea::ExperimentConfig;

int run_command(const std::vector<std::string>& config_paths,
                const std::map<std::string, std::string>& overrides, int jobs) {
  std::vector<ExperimentConfig> configs;
  try {
    if (config_paths.empty()) {
      configs.emplace_back();
    } else {
      for (const auto& p : config_paths) {
        configs.push_back(ExperimentConfig::load(p));
      }
    }
    for (auto& c : configs) {
      for (const auto& [key, value] : overrides) c.set(key, value);
    }
  } catch (const lcupea::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lcupea::kExitConfigError;
  }
  if (configs.size() == 1) return lcupea::cmd_run(configs.front(), std::cerr);
  return lcupea::cmd_run_batch(configs, jobs, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct-Hamiltonian iterative phase estimation simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run one or more experiment configs");
  std::vector<std::string> config_paths;
  int jobs = 1;
  std::map<std::string, std::string> override_values;
  std::map<std::string, CLI::Option*> override_options;
  run->add_option("configs", config_paths, "Experiment config files (*.cfg)");
  run->add_option("--jobs", jobs, "Configs to run concurrently")
      ->check(CLI::PositiveNumber);
  for (const auto& key : ExperimentConfig::keys()) {
    override_options[key] = run->add_option(
        "--" + key, override_values[key], "Override config key '" + key + "'");
  }

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Print exact eigenvalues");
  std::string ham_path;
  spectrum->add_option("hamiltonian", ham_path, "Hamiltonian file (*.ham)")
      ->required();

  // resources
  auto* resources =
      app.add_subcommand("resources", "Estimate qubits and operation count");
  int n = 0;
  int terms = 0;
  int bits = 0;
  std::string strategy_name = "successive";
  resources->add_option("--n", n, "System qubits")->required();
  resources->add_option("-L,--terms", terms, "Hamiltonian terms")->required();
  resources->add_option("--bits", bits, "Phase bits")->required();
  resources->add_option("--strategy", strategy_name, "Power strategy")
      ->check(CLI::IsMember({"successive", "permutation", "exact_oracle"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lcupea::kExitConfigError;
  }

  if (run->parsed()) {
    std::map<std::string, std::string> overrides;
    for (const auto& [key, opt] : override_options) {
      if (opt->count() > 0) overrides[key] = override_values[key];
    }
    return run_command(config_paths, overrides, jobs);
  }
  if (spectrum->parsed()) {
    return lcupea::cmd_spectrum(ham_path, std::cout, std::cerr);
  }
  return lcupea::cmd_resources(n, terms, bits,
                               *lcupea::parse_strategy(strategy_name), std::cout,
                               std::cerr);
}
