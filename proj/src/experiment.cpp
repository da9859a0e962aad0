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

#include "lcupea/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lcupea/text.hpp"

namespace lcupea {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kAuto = "auto";

fs::path resolve(std::string_view value, const fs::path& base_dir) {
  fs::path p{std::string(value)};
  if (!base_dir.empty() && p.is_relative()) p = base_dir / p;
  return p.lexically_normal();
}

int parse_int_in(std::string_view key, std::string_view value, long long lo,
                 long long hi) {
  const auto v = parse_int(value);
  if (!v || *v < lo || *v > hi) {
    throw ConfigurationError(std::string(key) + ": expected an integer in [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "], got '" + std::string(value) + "'");
  }
  return static_cast<int>(*v);
}

double parse_positive(std::string_view key, std::string_view value) {
  const auto v = parse_double(value);
  if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
    throw ConfigurationError(std::string(key) + ": expected a positive number, got '" +
                             std::string(value) + "'");
  }
  return *v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigurationError(std::string(key) + ": expected true or false, got '" +
                           std::string(value) + "'");
}

/// Maps library exceptions onto the documented exit codes.
int report_failure(std::ostream& err, std::string_view what, int code) {
  err << "error: " << what << '\n';
  return code;
}

}  // namespace

std::string_view to_string(OracleNormalization n) {
  return n == OracleNormalization::unitary ? "unitary" : "lcu";
}

std::string_view to_string(Readout r) {
  return r == Readout::exact ? "exact" : "shots";
}

// ---------------------------------------------------------------------------
// ExperimentConfig
// ---------------------------------------------------------------------------

const std::vector<std::string>& ExperimentConfig::keys() {
  static const std::vector<std::string> k{
      "hamiltonian_path", "output_dir",     "bits",
      "strategy",         "kappa",          "kappa_factor",
      "amplify_m",        "eigenvector",    "oracle_normalization",
      "readout",          "shots",          "seed",
      "emit_state_dumps", "mem_cap_qubits"};
  return k;
}

void ExperimentConfig::set(std::string_view key, std::string_view value,
                           const fs::path& base_dir) {
  value = trim(value);
  if (key == "hamiltonian_path") {
    if (value.empty()) throw ConfigurationError("hamiltonian_path is empty");
    hamiltonian_path = resolve(value, base_dir);
  } else if (key == "output_dir") {
    if (value.empty()) throw ConfigurationError("output_dir is empty");
    output_dir = fs::path(std::string(value)).lexically_normal();
  } else if (key == "bits") {
    bits = parse_int_in(key, value, 1, 52);
  } else if (key == "strategy") {
    const auto s = parse_strategy(value);
    if (!s) {
      throw ConfigurationError("strategy: expected successive, permutation or "
                               "exact_oracle, got '" + std::string(value) + "'");
    }
    strategy = *s;
  } else if (key == "kappa") {
    kappa = value == kAuto ? std::nullopt
                           : std::optional<double>(parse_positive(key, value));
  } else if (key == "kappa_factor") {
    kappa_factor = parse_positive(key, value);
    if (kappa_factor < 1.0) throw ConfigurationError("kappa_factor must be >= 1");
  } else if (key == "amplify_m") {
    amplify_m = value == kAuto
                    ? std::nullopt
                    : std::optional<int>(parse_int_in(key, value, 0, 1 << 20));
  } else if (key == "eigenvector") {
    auto src = EigenvectorSource::parse(value);
    if (!src) {
      throw ConfigurationError("eigenvector: expected exact_ground, basis:<i> or "
                               "file:<path>, got '" + std::string(value) + "'");
    }
    if (src->kind == EigenvectorSource::Kind::file) {
      src->path = resolve(src->path.string(), base_dir);
    }
    eigenvector = std::move(*src);
  } else if (key == "oracle_normalization") {
    if (value == "unitary") {
      oracle_normalization = OracleNormalization::unitary;
    } else if (value == "lcu") {
      oracle_normalization = OracleNormalization::lcu;
    } else {
      throw ConfigurationError("oracle_normalization: expected unitary or lcu");
    }
  } else if (key == "readout") {
    if (value == "exact") {
      readout = Readout::exact;
    } else if (value == "shots") {
      readout = Readout::shots;
    } else {
      throw ConfigurationError("readout: expected exact or shots");
    }
  } else if (key == "shots") {
    shots = parse_int_in(key, value, 1, 1 << 30);
  } else if (key == "seed") {
    const auto v = parse_int(value);
    if (!v || *v < 0) throw ConfigurationError("seed: expected a nonnegative integer");
    seed = static_cast<std::uint64_t>(*v);
  } else if (key == "emit_state_dumps") {
    emit_state_dumps = parse_bool(key, value);
  } else if (key == "mem_cap_qubits") {
    mem_cap_qubits =
        value == kAuto ? std::nullopt
                       : std::optional<int>(parse_int_in(key, value, 1,
                                                         kMaxStateQubits));
  } else {
    throw ConfigurationError("unknown key '" + std::string(key) + "'");
  }
}

ExperimentConfig ExperimentConfig::parse(std::string_view text,
                                         const fs::path& base_dir) {
  ExperimentConfig cfg;
  int line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    try {
      cfg.set(key, line.substr(eq + 1), base_dir);
    } catch (const ConfigurationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  return parse(read_text_file(path), path.parent_path());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "hamiltonian_path=" << hamiltonian_path.generic_string() << '\n'
      << "output_dir=" << output_dir.generic_string() << '\n'
      << "bits=" << bits << '\n'
      << "strategy=" << to_string(strategy) << '\n'
      << "kappa=" << (kappa ? format_shortest(*kappa) : std::string(kAuto)) << '\n'
      << "kappa_factor=" << format_shortest(kappa_factor) << '\n'
      << "amplify_m="
      << (amplify_m ? std::to_string(*amplify_m) : std::string(kAuto)) << '\n'
      << "eigenvector=" << eigenvector.to_string() << '\n'
      << "oracle_normalization=" << to_string(oracle_normalization) << '\n'
      << "readout=" << to_string(readout) << '\n'
      << "shots=" << shots << '\n'
      << "seed=" << seed << '\n'
      << "emit_state_dumps=" << (emit_state_dumps ? "true" : "false") << '\n'
      << "mem_cap_qubits="
      << (mem_cap_qubits ? std::to_string(*mem_cap_qubits) : std::string(kAuto))
      << '\n';
  return out.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.hamiltonian_path == b.hamiltonian_path &&
         a.output_dir == b.output_dir && a.bits == b.bits &&
         a.strategy == b.strategy && a.kappa == b.kappa &&
         a.kappa_factor == b.kappa_factor && a.amplify_m == b.amplify_m &&
         a.eigenvector.to_string() == b.eigenvector.to_string() &&
         a.oracle_normalization == b.oracle_normalization &&
         a.readout == b.readout && a.shots == b.shots && a.seed == b.seed &&
         a.emit_state_dumps == b.emit_state_dumps &&
         a.mem_cap_qubits == b.mem_cap_qubits;
}

int ExperimentConfig::effective_mem_cap() const {
  if (mem_cap_qubits) return *mem_cap_qubits;
  if (const char* env = std::getenv(kMemCapEnv); env && *env) {
    return parse_int_in(kMemCapEnv, env, 1, kMaxStateQubits);
  }
  return kDefaultMemCapQubits;
}

PeaConfig ExperimentConfig::to_pea_config() const {
  if (hamiltonian_path.empty()) {
    throw ConfigurationError("hamiltonian_path is required");
  }
  PeaConfig pc;
  pc.hamiltonian = load_hamiltonian(hamiltonian_path);
  pc.bits = bits;
  pc.strategy = strategy;
  pc.kappa = kappa;
  pc.kappa_factor = kappa_factor;
  pc.amplify_m = amplify_m;
  pc.eigenvector = eigenvector;
  pc.oracle_normalization = oracle_normalization;
  pc.readout = readout;
  pc.shots = shots;
  pc.seed = seed;
  pc.mem_cap_qubits = effective_mem_cap();
  return pc;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

void write_trace_csv(std::ostream& out, const PeaResult& result) {
  out << "iter,k,power,bit,p0_unnorm,p1_unnorm,feedback_angle\n";
  for (const auto& r : result.records) {
    out << r.iter << ',' << r.k << ',' << r.power() << ',' << r.bit << ','
        << format_g17(r.p0_unnorm) << ',' << format_g17(r.p1_unnorm) << ','
        << format_g17(r.feedback_angle) << '\n';
  }
}

std::string summary_json(const PeaResult& result) {
  nlohmann::ordered_json j;
  j["phase"] = result.phase;
  j["energy"] = result.energy;
  if (std::isfinite(result.exact_energy)) {
    j["exact_energy"] = result.exact_energy;
    j["abs_error"] = result.abs_error;
  } else {
    j["exact_energy"] = nullptr;
    j["abs_error"] = nullptr;
  }
  j["kappa"] = result.kappa;
  j["strategy"] = std::string(to_string(result.strategy));
  j["amplify_m"] = result.amplify_m;
  j["bits"] = result.measured_bits();
  return j.dump(2) + "\n";
}

int cmd_run(const ExperimentConfig& config, std::ostream& err) {
  try {
    PeaConfig pc = config.to_pea_config();
    const PauliSum h = pc.hamiltonian.canonical();

    // Soft precondition: the arcsin readout needs kappa above the spectral
    // radius. Warn, do not enforce.
    if (h.num_qubits() >= 1 && h.num_qubits() <= kDenseQubitCap) {
      const double kappa =
          pc.kappa ? *pc.kappa : choose_kappa(h, pc.kappa_factor).kappa;
      const double radius = exact_spectrum(h).values.cwiseAbs().maxCoeff();
      if (kappa <= radius) {
        err << "warning: kappa " << format_shortest(kappa)
            << " does not exceed the spectral radius " << format_shortest(radius)
            << "; recovered energies will be unreliable\n";
      }
    }

    fs::create_directories(config.output_dir);
    if (config.emit_state_dumps) {
      const fs::path dir = config.output_dir;
      pc.observer = [dir](const PeaIterationRecord& rec, const StateVector& s) {
        std::ostringstream name;
        name << "state_iter_";
        if (rec.iter < 10) name << '0';
        name << rec.iter << ".bin";
        write_state_dump(dir / name.str(), s);
      };
    }

    const PeaResult result = run_ipea(pc);

    std::ofstream trace(config.output_dir / "trace.csv", std::ios::binary);
    write_trace_csv(trace, result);
    std::ofstream summary(config.output_dir / "summary.json", std::ios::binary);
    summary << summary_json(result);
    if (!trace || !summary) {
      return report_failure(err, "cannot write to " + config.output_dir.string(),
                            kExitFailure);
    }
    const auto ties = std::count_if(result.records.begin(), result.records.end(),
                                    [](const auto& r) { return r.degenerate; });
    if (ties > 0) {
      err << "note: " << ties
          << " iteration(s) had tied probabilities; their bits were set to 0\n";
    }
    return kExitOk;
  } catch (const MemoryCapError& e) {
    return report_failure(err, e.what(), kExitCapError);
  } catch (const SizeError& e) {
    return report_failure(err, e.what(), kExitCapError);
  } catch (const Error& e) {
    return report_failure(err, e.what(), kExitConfigError);
  } catch (const std::exception& e) {
    return report_failure(err, e.what(), kExitFailure);
  }
}

int cmd_run_batch(const std::vector<ExperimentConfig>& configs, int jobs,
                  std::ostream& err) {
  std::set<fs::path> dirs;
  for (const auto& c : configs) {
    if (!dirs.insert(fs::weakly_canonical(c.output_dir)).second) {
      return report_failure(err,
                            "batch configs share output_dir " +
                                c.output_dir.string(),
                            kExitConfigError);
    }
  }
  const int workers =
      std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(1, configs.size())));
  std::vector<int> codes(configs.size(), kExitOk);
  std::vector<std::string> messages(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      std::ostringstream local;
      codes[i] = cmd_run(configs[i], local);
      messages[i] = local.str();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  int worst = kExitOk;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!messages[i].empty()) {
      err << "[" << configs[i].output_dir.generic_string() << "] " << messages[i];
    }
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

std::string spectrum_json(const PauliSum& h) {
  const Spectrum spec = exact_spectrum(h);
  std::string out = "{\"eigenvalues\": [";
  for (Eigen::Index j = 0; j < spec.values.size(); ++j) {
    if (j) out += ", ";
    out += format_general(spec.values(j), 12);
  }
  out += "]}\n";
  return out;
}

int cmd_spectrum(const fs::path& hamiltonian_path, std::ostream& out,
                 std::ostream& err) {
  try {
    const PauliSum h = load_hamiltonian(hamiltonian_path);
    out << spectrum_json(h);
    return kExitOk;
  } catch (const SizeError& e) {
    return report_failure(err, e.what(), kExitCapError);
  } catch (const Error& e) {
    return report_failure(err, e.what(), kExitConfigError);
  }
}

int cmd_resources(int n, int terms, int bits, PowerStrategy strategy,
                  std::ostream& out, std::ostream& err) {
  try {
    const ResourceReport r = estimate_resources(n, terms, bits, strategy);
    nlohmann::ordered_json j;
    j["strategy"] = std::string(to_string(strategy));
    j["n"] = n;
    j["terms"] = terms;
    j["bits"] = bits;
    j["qubits"] = r.qubits;
    j["ancilla_qubits"] = r.ancilla_qubits;
    j["op_count_bound"] = r.op_count_bound;
    out << j.dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_failure(err, e.what(), kExitConfigError);
  }
}

}  // namespace lcupea
