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

#include "lcupea/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "lcupea/errors.hpp"

namespace lcupea {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_dense_cap(int n) {
  if (n > kDenseQubitCap) {
    throw SizeError("dense oracle limited to " +
                    std::to_string(kDenseQubitCap) + " qubits, got " +
                    std::to_string(n));
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

// ---------------------------------------------------------------------------
// PauliString
// ---------------------------------------------------------------------------

PauliString::PauliString(int n) {
  if (n < 0) throw DimensionError("negative qubit count");
  ops_.assign(static_cast<std::size_t>(n), Pauli::I);
}

PauliString::PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {}

PauliString PauliString::from_word(std::string_view word) {
  std::vector<Pauli> ops(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    Pauli p;
    switch (word[i]) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default:
        throw ParameterError(std::string("illegal Pauli character '") +
                             word[i] + "'");
    }
    ops[word.size() - 1 - i] = p;
  }
  return PauliString(std::move(ops));
}

PauliString PauliString::single(int n, int q, Pauli p) {
  if (q < 0 || q >= n) throw IndexError("qubit index out of range");
  PauliString s(n);
  s.set(q, p);
  return s;
}

std::string PauliString::word() const {
  std::string w(ops_.size(), 'I');
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    w[ops_.size() - 1 - q] = to_char(ops_[q]);
  }
  return w;
}

bool PauliString::is_identity() const {
  return std::all_of(ops_.begin(), ops_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::X || ops_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t q = 0; q < ops_.size(); ++q) {
    if (ops_[q] == Pauli::Z || ops_[q] == Pauli::Y) m |= std::uint64_t{1} << q;
  }
  return m;
}

int PauliString::y_count() const {
  return static_cast<int>(std::count(ops_.begin(), ops_.end(), Pauli::Y));
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (int q = a.size() - 1; q >= 0; --q) {
    if (a[q] != b[q]) return a[q] <=> b[q];
  }
  return std::strong_ordering::equal;
}

std::pair<Complex, PauliString> pauli_multiply(const PauliString& a,
                                               const PauliString& b) {
  if (a.size() != b.size()) {
    throw DimensionError("pauli_multiply: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + " qubits");
  }
  int quarter_turns = 0;
  std::vector<Pauli> out(static_cast<std::size_t>(a.size()));
  for (int q = 0; q < a.size(); ++q) {
    const int pa = static_cast<int>(a[q]);
    const int pb = static_cast<int>(b[q]);
    if (pa == 0) {
      out[q] = b[q];
    } else if (pb == 0) {
      out[q] = a[q];
    } else if (pa == pb) {
      out[q] = Pauli::I;
    } else {
      // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
      out[q] = static_cast<Pauli>(6 - pa - pb);
      quarter_turns += ((pb - pa + 3) % 3 == 1) ? 1 : -1;
    }
  }
  return {i_power(quarter_turns), PauliString(std::move(out))};
}

// ---------------------------------------------------------------------------
// PauliSum
// ---------------------------------------------------------------------------

PauliSum::PauliSum(int n, std::vector<PauliTerm> terms) : n_(n) {
  terms_.reserve(terms.size());
  for (auto& t : terms) add(std::move(t));
}

PauliSum PauliSum::identity(int n, Complex coeff) {
  PauliSum s(n);
  s.add(coeff, PauliString(n));
  return s;
}

void PauliSum::add(PauliTerm term) {
  if (term.string.size() != n_) {
    throw DimensionError("term on " + std::to_string(term.string.size()) +
                         " qubits added to a " + std::to_string(n_) +
                         "-qubit sum");
  }
  if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag())) {
    throw ParameterError("non-finite Pauli coefficient");
  }
  terms_.push_back(std::move(term));
}

PauliSum PauliSum::canonical(double tol) const {
  std::map<PauliString, Complex> merged;
  for (const auto& t : terms_) merged[t.string] += t.coeff;
  PauliSum out(n_);
  for (auto& [s, c] : merged) {
    if (std::abs(c) >= tol) out.terms_.push_back({c, s});
  }
  return out;
}

double PauliSum::coefficient_one_norm() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.coeff);
  return sum;
}

Complex PauliSum::coefficient(const PauliString& s) const {
  Complex c = 0.0;
  for (const auto& t : terms_) {
    if (t.string == s) c += t.coeff;
  }
  return c;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw DimensionError("PauliSum qubit counts differ");
  for (const auto& t : other.terms_) terms_.push_back(t);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

PauliSum operator+(PauliSum a, const PauliSum& b) {
  a += b;
  return a.canonical();
}

PauliSum operator*(Complex scale, PauliSum a) {
  a *= scale;
  return a;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("PauliSum qubit counts differ");
  }
  PauliSum out(a.num_qubits());
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      auto [phase, s] = pauli_multiply(ta.string, tb.string);
      out.add(phase * ta.coeff * tb.coeff, s);
    }
  }
  return out.canonical();
}

// ---------------------------------------------------------------------------
// Hydrogen
// ---------------------------------------------------------------------------

PauliSum build_h2() {
  static constexpr std::pair<double, const char*> kTerms[] = {
      {-0.8126, "IIII"}, {0.1712, "IIIZ"},  {0.1712, "IIZI"},
      {-0.2228, "IZII"}, {-0.2228, "ZIII"}, {0.1686, "IIZZ"},
      {0.1205, "IZIZ"},  {0.1659, "IZZI"},  {0.1659, "ZIIZ"},
      {0.1205, "ZIZI"},  {0.1743, "ZZII"},  {-0.0453, "XXYY"},
      {0.0453, "XYYX"},  {0.0453, "YXXY"},  {-0.0453, "YYXX"},
  };
  PauliSum h(4);
  for (const auto& [c, w] : kTerms) h.add(c, PauliString::from_word(w));
  return h;
}

// ---------------------------------------------------------------------------
// Dense oracles
// ---------------------------------------------------------------------------

DenseMatrix to_dense(const PauliString& s) {
  check_dense_cap(s.size());
  const Eigen::Index dim = Eigen::Index{1} << s.size();
  const std::uint64_t x = s.x_mask();
  const std::uint64_t z = s.z_mask();
  const Complex base = i_power(s.y_count());
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto b = static_cast<std::uint64_t>(col);
    const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(b ^ x), col) = sign * base;
  }
  return m;
}

DenseMatrix to_dense(const PauliSum& h) {
  check_dense_cap(h.num_qubits());
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& t : h) m += t.coeff * to_dense(t.string);
  return m;
}

Spectrum exact_spectrum(const DenseMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("matrix is not square");
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw HermiticityError("matrix is not Hermitian (max asymmetry " +
                           std::to_string(asym) + ")");
  }
  const DenseMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum exact_spectrum(const PauliSum& h) {
  check_dense_cap(h.num_qubits());
  return exact_spectrum(to_dense(h));
}

}  // namespace lcupea
