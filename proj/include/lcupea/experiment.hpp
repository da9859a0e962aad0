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

// Experiment runner: flat key=value configs, trace/summary emission, and the
// subcommand bodies wrapped by the command-line tool.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lcupea/pea.hpp"

namespace lcupea {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCapError = 3;

/// Environment variable overriding the default memory cap.
inline constexpr const char* kMemCapEnv = "LCUPEA_MEM_CAP_QUBITS";

/**
 * Everything one `run` needs. Optional fields serialize as "auto":
 * kappa (kappa_factor x induced 1-norm), amplify_m (tuned against the
 * eigenvector) and mem_cap_qubits (environment, else 26).
 */
struct ExperimentConfig {
  std::filesystem::path hamiltonian_path;
  std::filesystem::path output_dir = "out";
  int bits = 1;
  PowerStrategy strategy = PowerStrategy::successive;
  std::optional<double> kappa;
  double kappa_factor = 10.0;
  std::optional<int> amplify_m = 0;
  EigenvectorSource eigenvector;
  OracleNormalization oracle_normalization = OracleNormalization::unitary;
  Readout readout = Readout::exact;
  int shots = 1024;
  std::uint64_t seed = 0;
  bool emit_state_dumps = false;
  std::optional<int> mem_cap_qubits;

  /// Every recognized key, in serialization order.
  static const std::vector<std::string>& keys();

  /// Parses key=value lines ('#' comments). Relative paths are resolved
  /// against `base_dir` when it is non-empty. Throws ParseError.
  static ExperimentConfig parse(std::string_view text,
                                const std::filesystem::path& base_dir = {});
  /// Reads a file; relative paths inside it resolve against its directory.
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Sets one key from its text form. Throws ConfigurationError.
  void set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});

  std::string serialize() const;

  int effective_mem_cap() const;
  /// Loads the Hamiltonian and builds the engine configuration.
  PeaConfig to_pea_config() const;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

std::string_view to_string(OracleNormalization n);
std::string_view to_string(Readout r);

/// Header `iter,k,power,bit,p0_unnorm,p1_unnorm,feedback_angle`; floats with
/// 17 significant digits.
void write_trace_csv(std::ostream& out, const PeaResult& result);
/// {phase, energy, exact_energy, abs_error, kappa, strategy, amplify_m, bits}
/// with bits in measurement order (least significant first).
std::string summary_json(const PeaResult& result);

/// Runs one experiment into config.output_dir. Exit codes: 0 success,
/// 2 configuration error, 3 memory or size cap. Diagnostics go to `err`.
int cmd_run(const ExperimentConfig& config, std::ostream& err);

/// Runs independent configs on up to `jobs` threads. Output directories
/// must be pairwise distinct. Returns the largest exit code.
int cmd_run_batch(const std::vector<ExperimentConfig>& configs, int jobs,
                  std::ostream& err);

/// Prints {"eigenvalues": [...]} ascending, 12 significant digits.
int cmd_spectrum(const std::filesystem::path& hamiltonian_path,
                 std::ostream& out, std::ostream& err);
std::string spectrum_json(const PauliSum& h);

/// Prints the estimate_resources report as JSON.
int cmd_resources(int n, int terms, int bits, PowerStrategy strategy,
                  std::ostream& out, std::ostream& err);

}  // namespace lcupea
