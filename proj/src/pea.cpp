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

#include "lcupea/pea.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lcupea/text.hpp"

namespace lcupea {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxBits = 52;

RegisterLayout composite_layout(const LcuOperator& lcu) {
  return RegisterLayout(0, 0, lcu.ancilla_width, lcu.n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Eigenvector sources
// ---------------------------------------------------------------------------

std::optional<EigenvectorSource> EigenvectorSource::parse(std::string_view text) {
  text = trim(text);
  if (text == "exact_ground") return exact_ground();
  if (text.starts_with("basis:")) {
    const auto i = parse_int(text.substr(6));
    if (!i || *i < 0) return std::nullopt;
    return basis_state(static_cast<Index>(*i));
  }
  if (text.starts_with("file:") && text.size() > 5) {
    return file(std::filesystem::path(std::string(text.substr(5))));
  }
  return std::nullopt;
}

std::string EigenvectorSource::to_string() const {
  switch (kind) {
    case Kind::exact_ground: return "exact_ground";
    case Kind::basis_state: return "basis:" + std::to_string(basis_index);
    case Kind::file: return "file:" + path.generic_string();
    case Kind::given: return "given";
  }
  return "unknown";
}

Eigen::VectorXcd load_eigenvector(const std::filesystem::path& path,
                                  int system_qubits) {
  const std::string text = read_text_file(path);
  std::vector<Complex> amps;
  int line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto fields = split_whitespace(strip_comment(line));
    if (fields.empty()) continue;
    if (fields.size() > 2) throw ParseError(line_no, "expected '<re> [<im>]'");
    const auto re = parse_double(fields[0]);
    const auto im = fields.size() == 2 ? parse_double(fields[1]) : 0.0;
    if (!re || !im) throw ParseError(line_no, "malformed amplitude");
    amps.emplace_back(*re, *im);
  }
  const auto dim = Index{1} << system_qubits;
  if (amps.size() != dim) {
    throw DimensionError("eigenvector file has " + std::to_string(amps.size()) +
                         " amplitudes, expected " + std::to_string(dim));
  }
  Eigen::VectorXcd v =
      Eigen::Map<Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(dim));
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NormalizationError("eigenvector file holds a zero vector");
  }
  return v / norm;
}

// ---------------------------------------------------------------------------
// Result helpers
// ---------------------------------------------------------------------------

std::string PeaResult::measured_bits() const {
  std::string out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.bit ? '1' : '0');
  return out;
}

const PeaIterationRecord& PeaResult::record_for_power(int k) const {
  for (const auto& r : records) {
    if (r.k == k) return r;
  }
  throw IndexError("no iteration used power 2^" + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Controlled powers
// ---------------------------------------------------------------------------

void controlled_power_successive(StateVector& state, const AmplifiedOperator& op,
                                 int k, const Control& control) {
  if (k < 0 || k > kMaxBits) throw ParameterError("power exponent out of range");
  const std::uint64_t reps = std::uint64_t{1} << k;
  for (std::uint64_t r = 0; r < reps; ++r) apply_amplified(state, op, control);
}

SuccessivePowerCache::SuccessivePowerCache(const AmplifiedOperator& op) {
  const RegisterLayout layout = composite_layout(op.base);
  width_ = layout.total_qubits();
  if (width_ > kBlockExtractionQubitCap) {
    throw SizeError("composite cache limited to " +
                    std::to_string(kBlockExtractionQubitCap) + " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  DenseMatrix composite(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector column(layout);
    column[0] = 0.0;
    column[static_cast<Index>(j)] = 1.0;
    apply_amplified(column, op);
    composite.col(j) = column.amplitudes();
  }
  squares_.push_back(std::move(composite));
}

const DenseMatrix& SuccessivePowerCache::power(int k) {
  if (k < 0 || k > kMaxBits) throw ParameterError("power exponent out of range");
  while (static_cast<int>(squares_.size()) <= k) {
    const DenseMatrix& last = squares_.back();
    DenseMatrix next = last * last;
    squares_.push_back(std::move(next));
  }
  return squares_[static_cast<std::size_t>(k)];
}

void SuccessivePowerCache::apply(StateVector& state, int k,
                                 const Control& control) {
  const auto& layout = state.layout();
  if (layout.system + layout.ancilla != width_ || layout.doubling != 0) {
    throw LayoutError("state layout does not match the cached composite");
  }
  apply_low_block_matrix(state, power(k), control);
}

void controlled_power_permutation(StateVector& state, const AmplifiedOperator& op,
                                  int k, const Control& control) {
  const auto& layout = state.layout();
  if (k < 0) throw ParameterError("power exponent must be nonnegative");
  if (layout.doubling < k) {
    throw LayoutError("doubling register has " + std::to_string(layout.doubling) +
                      " qubits, level " + std::to_string(k) + " needs " +
                      std::to_string(k));
  }
  // Unrolling the recursion L_j = L_{j-1} Pi_j L_{j-1} gives 2^k level-0
  // applications; the flip following the (i+1)-th one belongs to level
  // ctz(i+1) + 1.
  const Index ancilla = layout.ancilla_mask();
  const Index total = Index{1} << k;
  for (Index i = 0; i < total; ++i) {
    apply_amplified(state, op, control);
    if (i + 1 == total) break;
    const int level = std::countr_zero(i + 1) + 1;
    const Index watched =
        ancilla | RegisterLayout::bits(layout.doubling_offset(), level - 1);
    flip_if_nonzero(state, layout.doubling_qubit(level - 1), watched, control);
  }
}

ExactPowerOracle::ExactPowerOracle(const PauliSum& h, double kappa, double s,
                                   OracleNormalization normalization) {
  if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
  if (!(s > 0.0)) throw ParameterError("normalization s must be positive");
  const Spectrum spec = exact_spectrum(h);
  vectors_ = spec.vectors;
  const auto dim = spec.values.size();
  log_magnitude_.resize(dim);
  angle_.resize(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double x = spec.values(j) / kappa;
    angle_(j) = std::atan2(-x, 1.0);
    log_magnitude_(j) = normalization == OracleNormalization::unitary
                            ? 0.0
                            : 0.5 * std::log1p(x * x) - std::log(s);
  }
}

DenseMatrix ExactPowerOracle::power(int k) const {
  if (k < 0 || k > kMaxBits) throw ParameterError("power exponent out of range");
  Eigen::VectorXcd diag(angle_.size());
  for (Eigen::Index j = 0; j < angle_.size(); ++j) {
    // Scaling by 2^k is exact in binary floating point, so the only rounding
    // is in the final reduction modulo 2 pi.
    const double angle = std::fmod(std::ldexp(angle_(j), k), kTwoPi);
    const double mag = std::exp(std::ldexp(log_magnitude_(j), k));
    diag(j) = std::polar(mag, angle);
  }
  return vectors_ * diag.asDiagonal() * vectors_.adjoint();
}

void ExactPowerOracle::apply(StateVector& state, int k,
                             const Control& control) const {
  if (state.layout().system != std::countr_zero(
                                  static_cast<Index>(vectors_.rows()))) {
    throw LayoutError("system register width does not match the oracle");
  }
  // The operator acts on the system register; every other register must be
  // either above it (phase qubit) or untouched, so apply it blockwise.
  apply_low_block_matrix(state, power(k), control);
}

void exact_oracle_power(StateVector& state, const PauliSum& h, double kappa,
                        int k, const Control& control,
                        OracleNormalization normalization) {
  const double s = build_htilde(h, kappa).s;
  ExactPowerOracle(h, kappa, s, normalization).apply(state, k, control);
}

// ---------------------------------------------------------------------------
// Phase bookkeeping
// ---------------------------------------------------------------------------

double feedback_angle(std::span<const int> prior_bits) {
  double frac = 0.0;
  for (std::size_t j = 0; j < prior_bits.size(); ++j) {
    if (prior_bits[j]) frac += std::ldexp(1.0, -static_cast<int>(j) - 2);
  }
  return -kTwoPi * frac;
}

double phase_from_bits(std::span<const int> bits_msb_first) {
  double phase = 0.0;
  for (std::size_t j = 0; j < bits_msb_first.size(); ++j) {
    if (bits_msb_first[j]) phase += std::ldexp(1.0, -static_cast<int>(j) - 1);
  }
  return phase;
}

std::vector<int> bits_of(double phase, int a) {
  if (a < 0 || a > kMaxBits) throw ParameterError("bit count out of range");
  if (!(phase >= 0.0 && phase < 1.0)) {
    throw ParameterError("phase must lie in [0, 1)");
  }
  const auto x =
      static_cast<std::uint64_t>(std::floor(std::ldexp(phase, a)));
  std::vector<int> bits(static_cast<std::size_t>(a));
  for (int j = 0; j < a; ++j) bits[j] = static_cast<int>((x >> (a - 1 - j)) & 1u);
  return bits;
}

double recover_energy(double phase, double kappa) {
  return kappa * std::asin(-std::sin(kTwoPi * phase));
}

// ---------------------------------------------------------------------------
// The IPEA loop
// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXcd resolve_eigenvector(const EigenvectorSource& src,
                                     const PauliSum& h) {
  const int n = h.num_qubits();
  const auto dim = Eigen::Index{1} << n;
  switch (src.kind) {
    case EigenvectorSource::Kind::exact_ground:
      return exact_spectrum(h).vectors.col(0);
    case EigenvectorSource::Kind::basis_state: {
      if (src.basis_index >= static_cast<Index>(dim)) {
        throw IndexError("basis state " + std::to_string(src.basis_index) +
                         " outside a " + std::to_string(n) + "-qubit register");
      }
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(static_cast<Eigen::Index>(src.basis_index)) = 1.0;
      return v;
    }
    case EigenvectorSource::Kind::file:
      return load_eigenvector(src.path, n);
    case EigenvectorSource::Kind::given: {
      if (src.vector.size() != dim) {
        throw DimensionError("eigenvector dimension does not match the system");
      }
      const double norm = src.vector.norm();
      if (!(norm > 0.0)) throw NormalizationError("eigenvector is zero");
      return src.vector / norm;
    }
  }
  throw ConfigurationError("unknown eigenvector source");
}

/// Eigenvalue whose eigenvector overlaps the input the most.
double matching_eigenvalue(const PauliSum& h, const Eigen::VectorXcd& v) {
  if (h.num_qubits() > kDenseQubitCap) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const Spectrum spec = exact_spectrum(h);
  const Eigen::VectorXd overlaps = (spec.vectors.adjoint() * v).cwiseAbs2();
  Eigen::Index best = 0;
  overlaps.maxCoeff(&best);
  return spec.values(best);
}

struct BitDecision {
  int bit = 0;
  bool degenerate = false;
};

BitDecision decide_bit(const PhaseStatistics& stats, Readout readout, int shots,
                       std::mt19937_64& rng) {
  const double total = stats.p0 + stats.p1;
  if (readout == Readout::exact) {
    if (!(total > 0.0) || std::abs(stats.p1 - stats.p0) <= kTieTolerance * total) {
      return {0, true};
    }
    return {stats.p1 > stats.p0 ? 1 : 0, false};
  }
  if (!(total > 0.0)) return {0, true};
  std::binomial_distribution<long long> draw(shots,
                                             std::clamp(stats.p1 / total, 0.0, 1.0));
  const long long ones = draw(rng);
  if (2 * ones == shots) return {0, true};
  return {2 * ones > shots ? 1 : 0, false};
}

}  // namespace

PeaResult run_ipea(const PeaConfig& config) {
  const int a = config.bits;
  if (a < 1 || a > kMaxBits) {
    throw ParameterError("bits must lie in [1, " + std::to_string(kMaxBits) + "]");
  }
  if (config.readout == Readout::shots && config.shots < 1) {
    throw ParameterError("shots must be >= 1");
  }
  if (config.amplify_m && *config.amplify_m < 0) {
    throw ParameterError("amplify_m must be nonnegative");
  }
  const PauliSum h = config.hamiltonian.canonical();
  if (h.num_qubits() < 1) throw ParameterError("Hamiltonian has no qubits");
  const int n = h.num_qubits();

  const double kappa = config.kappa ? *config.kappa
                                    : choose_kappa(h, config.kappa_factor).kappa;
  const LcuOperator lcu = build_htilde(h, kappa);
  const int l = lcu.ancilla_width;

  int qubits = 0;
  switch (config.strategy) {
    case PowerStrategy::successive: qubits = 1 + l + n; break;
    case PowerStrategy::permutation: qubits = a + l + n; break;
    case PowerStrategy::exact_oracle: qubits = 1 + n; break;
  }
  const int cap = std::min(config.mem_cap_qubits, kMaxStateQubits);
  if (qubits > cap) {
    throw MemoryCapError(std::string(to_string(config.strategy)) + " needs " +
                         std::to_string(qubits) + " qubits, cap is " +
                         std::to_string(cap));
  }

  const Eigen::VectorXcd eigvec = resolve_eigenvector(config.eigenvector, h);

  PeaResult result;
  result.kappa = kappa;
  result.strategy = config.strategy;
  result.exact_energy = matching_eigenvalue(h, eigvec);

  int m = 0;
  if (config.strategy != PowerStrategy::exact_oracle) {
    m = config.amplify_m ? *config.amplify_m
                         : tune_m(lcu, eigvec, config.tune_m_max).best_m;
  }
  result.amplify_m = m;
  const AmplifiedOperator op{lcu, m};

  std::optional<SuccessivePowerCache> cache;
  std::optional<ExactPowerOracle> oracle;
  if (config.strategy == PowerStrategy::successive &&
      l + n <= kBlockExtractionQubitCap) {
    cache.emplace(op);
  }
  if (config.strategy == PowerStrategy::exact_oracle) {
    oracle.emplace(h, kappa, lcu.s, config.oracle_normalization);
  }

  std::mt19937_64 rng(config.seed);
  std::vector<int> measured;  // most recent first
  result.bits.assign(static_cast<std::size_t>(a), 0);

  for (int k = a - 1; k >= 0; --k) {
    RegisterLayout layout;
    switch (config.strategy) {
      case PowerStrategy::successive: layout = RegisterLayout(1, 0, l, n); break;
      case PowerStrategy::permutation: layout = RegisterLayout(1, k, l, n); break;
      case PowerStrategy::exact_oracle: layout = RegisterLayout(1, 0, 0, n); break;
    }
    StateVector state = prepare(layout, eigvec);
    const int pq = layout.phase_qubit();
    const Control ctrl = Control::on(pq);

    apply_hadamard(state, pq);
    switch (config.strategy) {
      case PowerStrategy::successive:
        if (cache) {
          cache->apply(state, k, ctrl);
        } else {
          controlled_power_successive(state, op, k, ctrl);
        }
        break;
      case PowerStrategy::permutation:
        controlled_power_permutation(state, op, k, ctrl);
        break;
      case PowerStrategy::exact_oracle:
        oracle->apply(state, k, ctrl);
        break;
    }
    const double w = feedback_angle(measured);
    apply_phase_rotation(state, pq, w);
    apply_hadamard(state, pq);

    PeaIterationRecord rec;
    rec.iter = a - k;
    rec.k = k;
    rec.feedback_angle = w;
    rec.kept_norm = project_ancilla_zero(state);
    const PhaseStatistics stats = phase_qubit_statistics(state);
    rec.p0_unnorm = stats.p0;
    rec.p1_unnorm = stats.p1;
    const BitDecision d = decide_bit(stats, config.readout, config.shots, rng);
    rec.bit = d.bit;
    rec.degenerate = d.degenerate;

    measured.insert(measured.begin(), rec.bit);
    result.bits[static_cast<std::size_t>(k)] = rec.bit;
    result.records.push_back(rec);
    if (config.observer) config.observer(rec, state);
  }

  result.phase = phase_from_bits(result.bits);
  result.energy = recover_energy(result.phase, kappa);
  result.abs_error = std::abs(result.energy - result.exact_energy);
  return result;
}

}  // namespace lcupea
