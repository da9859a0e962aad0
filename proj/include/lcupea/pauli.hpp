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

#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace lcupea {

using Complex = std::complex<double>;

/// Small dense complex matrix. Only used as a validation oracle; the
/// simulator itself never materializes operators on the full register.
using DenseMatrix = Eigen::MatrixXcd;

/// Coefficients with magnitude below this are dropped by canonicalization.
inline constexpr double kDropTolerance = 1e-12;

/// Largest qubit count accepted by the dense oracles (64 x 64 matrices).
inline constexpr int kDenseQubitCap = 6;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/**
 * Tensor product of single-qubit Paulis on n qubits.
 *
 * ops()[q] acts on qubit q; qubit 0 is the least significant bit of a basis
 * index and the rightmost character of the textual word, so the word "XZ"
 * means Z on qubit 0 and X on qubit 1.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n);  // identity on n qubits
  explicit PauliString(std::vector<Pauli> ops);

  /// Parses a word over {I,X,Y,Z}; the rightmost character is qubit 0.
  static PauliString from_word(std::string_view word);
  /// Single non-identity factor `p` on qubit `q` of an n-qubit string.
  static PauliString single(int n, int q, Pauli p);

  int size() const noexcept { return static_cast<int>(ops_.size()); }
  Pauli operator[](int q) const { return ops_[static_cast<std::size_t>(q)]; }
  void set(int q, Pauli p) { ops_.at(static_cast<std::size_t>(q)) = p; }
  const std::vector<Pauli>& ops() const noexcept { return ops_; }

  std::string word() const;
  bool is_identity() const;

  // Symplectic form: P = i^{y_count} X^{x_mask} Z^{z_mask}, which gives
  // P|b> = i^{y_count} (-1)^{popcount(b & z_mask)} |b ^ x_mask>.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  int y_count() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Lexicographic by word (most significant qubit first).
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b);

 private:
  std::vector<Pauli> ops_;
};

struct PauliTerm {
  Complex coeff{1.0, 0.0};
  PauliString string;
};

/// Phase and string of the product a*b; the phase is one of {1, i, -1, -i}.
std::pair<Complex, PauliString> pauli_multiply(const PauliString& a,
                                               const PauliString& b);

/// Weighted sum of Pauli strings on a fixed number of qubits.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n) : n_(n) {}
  PauliSum(int n, std::vector<PauliTerm> terms);

  static PauliSum identity(int n, Complex coeff = 1.0);

  int num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  void add(PauliTerm term);
  void add(Complex coeff, const PauliString& string) {
    add(PauliTerm{coeff, string});
  }

  /// Merges duplicate strings, drops |coeff| < tol, sorts by word.
  PauliSum canonical(double tol = kDropTolerance) const;

  /// Sum of |coeff| over all terms.
  double coefficient_one_norm() const;
  /// Coefficient of `s` after canonicalization (0 when absent).
  Complex coefficient(const PauliString& s) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator*(Complex scale, PauliSum a);
/// Operator product, canonicalized.
PauliSum operator*(const PauliSum& a, const PauliSum& b);

// ---------------------------------------------------------------------------
// Fermionic ladder operators
// ---------------------------------------------------------------------------

struct LadderOperator {
  int mode = 0;
  bool raising = false;
};

inline LadderOperator create(int mode) { return {mode, true}; }
inline LadderOperator annihilate(int mode) { return {mode, false}; }

/// Jordan-Wigner image of a single ladder operator:
///   a_j  -> (X_j + i Y_j)/2 * Z_{j-1} ... Z_0
///   a_j' -> (X_j - i Y_j)/2 * Z_{j-1} ... Z_0
/// so that a_j maps |1> to |0> on qubit j.
PauliSum jordan_wigner(LadderOperator op, int n);

/// Ordered product of ladder operators; an empty list is the identity.
PauliSum ladder_product(std::span<const LadderOperator> ops, int n);
PauliSum ladder_product(std::initializer_list<LadderOperator> ops, int n);

/// The 15-term, 4-qubit minimal-basis hydrogen Hamiltonian (hartree) at the
/// 0.7414 angstrom bond length.
PauliSum build_h2();

// ---------------------------------------------------------------------------
// Sums of rank-one projectors as sums of reflections
// ---------------------------------------------------------------------------

/// sum_j |x_j><x_j| == coeffs[0] * I + sum_{j>=1} coeffs[j] (I - 2|x_j><x_j|)
struct ReflectionSum {
  int dim = 0;
  std::vector<double> coeffs;
  /// axes[0] is empty (identity); axes[j] is the unit vector x_j.
  std::vector<Eigen::VectorXcd> axes;

  std::size_t size() const noexcept { return coeffs.size(); }
  /// Dense form of the j-th unitary (I for j = 0).
  DenseMatrix reflection(std::size_t j) const;
  /// Dense sum_j coeffs[j] * R_j.
  DenseMatrix dense() const;
};

ReflectionSum rank_one_decompose(std::span<const Eigen::VectorXcd> vectors);

// ---------------------------------------------------------------------------
// Dense oracles (n <= kDenseQubitCap)
// ---------------------------------------------------------------------------

DenseMatrix to_dense(const PauliString& s);
DenseMatrix to_dense(const PauliSum& h);

struct Spectrum {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
};

Spectrum exact_spectrum(const DenseMatrix& h);
Spectrum exact_spectrum(const PauliSum& h);

// ---------------------------------------------------------------------------
// Text format: "<real-coeff> <pauli-word>" per line, '#' comments
// ---------------------------------------------------------------------------

PauliSum parse_hamiltonian(std::string_view text);
std::string serialize_hamiltonian(const PauliSum& h);

PauliSum load_hamiltonian(const std::filesystem::path& path);

}  // namespace lcupea
