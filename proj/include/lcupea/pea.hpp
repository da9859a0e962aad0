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

// Iterative phase estimation on the block-encoded H~.
//
// One phase qubit is recycled across `bits` iterations. Iteration order is
// the standard one: the largest power 2^(a-1) runs first and yields the least
// significant phase bit; each later iteration removes the already-known lower
// bits with a diag(1, e^{iw}) feedback rotation before the final Hadamard.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcupea/amplification.hpp"
#include "lcupea/lcu.hpp"

namespace lcupea {

inline constexpr int kDefaultMemCapQubits = 26;

/// Relative probability gap below which p0 and p1 count as tied.
inline constexpr double kTieTolerance = 1e-14;

struct EigenvectorSource {
  enum class Kind { exact_ground, basis_state, file, given };

  Kind kind = Kind::exact_ground;
  Index basis_index = 0;
  std::filesystem::path path;
  Eigen::VectorXcd vector;  // Kind::given

  static EigenvectorSource exact_ground() { return {}; }
  static EigenvectorSource basis_state(Index i) {
    EigenvectorSource s;
    s.kind = Kind::basis_state;
    s.basis_index = i;
    return s;
  }
  static EigenvectorSource file(std::filesystem::path p) {
    EigenvectorSource s;
    s.kind = Kind::file;
    s.path = std::move(p);
    return s;
  }
  static EigenvectorSource given(Eigen::VectorXcd v) {
    EigenvectorSource s;
    s.kind = Kind::given;
    s.vector = std::move(v);
    return s;
  }

  /// "exact_ground", "basis:<index>" or "file:<path>".
  static std::optional<EigenvectorSource> parse(std::string_view text);
  std::string to_string() const;
};

/// Reads one amplitude per line: "<re>" or "<re> <im>"; '#' comments.
/// The result is normalized.
Eigen::VectorXcd load_eigenvector(const std::filesystem::path& path,
                                  int system_qubits);

/// How the exact_oracle strategy scales eigenvalues of H~.
enum class OracleNormalization {
  /// mu / |mu|: a unitary with the exact eigenphases of H~.
  unitary,
  /// mu / s: the block U1 encodes, contraction included.
  lcu,
};

enum class Readout {
  /// Compare the exact (unnormalized) phase-qubit probabilities.
  exact,
  /// Majority vote over seeded binomial samples of the post-selected qubit.
  shots,
};

struct PeaIterationRecord {
  int iter = 0;   // 1-based execution order
  int k = 0;      // operator power 2^k
  int bit = 0;
  double p0_unnorm = 0.0;
  double p1_unnorm = 0.0;
  double feedback_angle = 0.0;
  double kept_norm = 0.0;
  bool degenerate = false;

  std::uint64_t power() const { return std::uint64_t{1} << k; }
};

struct PeaResult {
  std::vector<PeaIterationRecord> records;
  /// bits[j] is the (j+1)-th binary digit of the phase (from power 2^j).
  std::vector<int> bits;
  double phase = 0.0;
  double energy = 0.0;
  double exact_energy = 0.0;
  double abs_error = 0.0;
  double kappa = 0.0;
  int amplify_m = 0;
  PowerStrategy strategy = PowerStrategy::successive;

  /// Bits in measurement order (least significant first), e.g. "1100".
  std::string measured_bits() const;
  /// Record measured with operator power 2^k.
  const PeaIterationRecord& record_for_power(int k) const;
};

struct PeaConfig {
  PauliSum hamiltonian;
  int bits = 1;
  PowerStrategy strategy = PowerStrategy::successive;
  /// nullopt: kappa_factor times the induced 1-norm of H.
  std::optional<double> kappa;
  double kappa_factor = 10.0;
  /// nullopt: tune_m against the input eigenvector.
  std::optional<int> amplify_m = 0;
  int tune_m_max = 16;
  EigenvectorSource eigenvector;
  OracleNormalization oracle_normalization = OracleNormalization::unitary;
  Readout readout = Readout::exact;
  int shots = 1024;
  std::uint64_t seed = 0;
  int mem_cap_qubits = kDefaultMemCapQubits;

  /// Called after each iteration with the projected (unnormalized) state.
  std::function<void(const PeaIterationRecord&, const StateVector&)> observer;
};

// ---------------------------------------------------------------------------
// Controlled powers
// ---------------------------------------------------------------------------

/// Applies (Q^m U1)^(2^k) by 2^k successive applications, all controlled.
void controlled_power_successive(StateVector& state, const AmplifiedOperator& op,
                                 int k, const Control& control);

/**
 * Same operator as controlled_power_successive, built once as a dense matrix
 * on the ancilla+system register and raised to 2^k by repeated squaring.
 * Only for registers of at most 12 qubits.
 */
class SuccessivePowerCache {
 public:
  explicit SuccessivePowerCache(const AmplifiedOperator& op);

  int width() const noexcept { return width_; }
  /// (Q^m U1)^(2^k) on the ancilla+system register.
  const DenseMatrix& power(int k);
  void apply(StateVector& state, int k, const Control& control);

 private:
  int width_ = 0;
  std::vector<DenseMatrix> squares_;
};

/**
 * Level-k doubled operator. Level 0 is Q^m U1; level j is
 * L_{j-1} . Pi_j . L_{j-1}, where Pi_j flips doubling qubit j-1 whenever the
 * ancilla register or a lower doubling qubit is nonzero. Its all-zero block
 * is exactly the 2^k-th power of the level-0 block.
 */
void controlled_power_permutation(StateVector& state, const AmplifiedOperator& op,
                                  int k, const Control& control);

/// Dense powers of H~ from its eigendecomposition, bypassing the LCU.
class ExactPowerOracle {
 public:
  ExactPowerOracle(const PauliSum& h, double kappa, double s,
                   OracleNormalization normalization);

  DenseMatrix power(int k) const;
  void apply(StateVector& state, int k, const Control& control) const;

 private:
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXd log_magnitude_;
  Eigen::VectorXd angle_;
};

void exact_oracle_power(StateVector& state, const PauliSum& h, double kappa,
                        int k, const Control& control,
                        OracleNormalization normalization =
                            OracleNormalization::lcu);

// ---------------------------------------------------------------------------
// Phase bookkeeping
// ---------------------------------------------------------------------------

/**
 * Feedback angle w = -2 pi (0.0 b1 b2 ...)_2 where prior_bits = {b1, b2, ...}
 * lists the already-measured bits from the next-less-significant one
 * downward (most recently measured first).
 */
double feedback_angle(std::span<const int> prior_bits);

/// 0.b1 b2 ... b_a in binary; bits_msb_first[0] = b1.
double phase_from_bits(std::span<const int> bits_msb_first);
/// Digits of floor(phase * 2^a) / 2^a, most significant first.
std::vector<int> bits_of(double phase, int a);

/// kappa * asin(Im(exp(-2 pi i phase))).
double recover_energy(double phase, double kappa);

PeaResult run_ipea(const PeaConfig& config);

}  // namespace lcupea
