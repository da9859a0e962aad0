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

// Matrix-free statevector storage and register-level primitives.
//
// Every primitive here is a single pass over the flat amplitude array. None of
// them builds a matrix on the full register; the only dense operand accepted
// (apply_low_block_matrix) acts on a low-bit sub-register whose size the
// caller bounds.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "lcupea/errors.hpp"
#include "lcupea/pauli.hpp"

namespace lcupea {

using Index = std::uint64_t;

/// Hard ceiling on statevector width, independent of any experiment cap.
inline constexpr int kMaxStateQubits = 34;

/**
 * Qubit accounting for one simulation.
 *
 * Bit layout of a basis index, least significant first:
 *   [system: n] [ancilla: l] [doubling: d] [phase: 0 or 1]
 */
struct RegisterLayout {
  int phase = 0;
  int doubling = 0;
  int ancilla = 0;
  int system = 0;

  constexpr RegisterLayout() = default;
  constexpr RegisterLayout(int phase_qubits, int doubling_qubits,
                           int ancilla_qubits, int system_qubits)
      : phase(phase_qubits),
        doubling(doubling_qubits),
        ancilla(ancilla_qubits),
        system(system_qubits) {
    if (phase < 0 || phase > 1 || doubling < 0 || ancilla < 0 || system < 0) {
      throw LayoutError("invalid register layout");
    }
  }

  constexpr int total_qubits() const {
    return phase + doubling + ancilla + system;
  }
  constexpr Index dimension() const { return Index{1} << total_qubits(); }

  constexpr int ancilla_offset() const { return system; }
  constexpr int doubling_offset() const { return system + ancilla; }

  int phase_qubit() const {
    if (phase == 0) throw LayoutError("layout has no phase qubit");
    return system + ancilla + doubling;
  }
  int ancilla_qubit(int j) const {
    if (j < 0 || j >= ancilla) throw LayoutError("ancilla qubit out of range");
    return ancilla_offset() + j;
  }
  /// j-th doubling qubit, 0-based.
  int doubling_qubit(int j) const {
    if (j < 0 || j >= doubling) {
      throw LayoutError("doubling qubit out of range");
    }
    return doubling_offset() + j;
  }

  static constexpr Index bits(int offset, int width) {
    return ((Index{1} << width) - 1) << offset;
  }
  constexpr Index system_mask() const { return bits(0, system); }
  constexpr Index ancilla_mask() const { return bits(ancilla_offset(), ancilla); }
  constexpr Index doubling_mask() const {
    return bits(doubling_offset(), doubling);
  }
  constexpr Index phase_mask() const {
    return bits(system + ancilla + doubling, phase);
  }

  constexpr Index compose(Index phase_bit, Index doubling_value,
                          Index ancilla_value, Index system_value) const {
    return (phase_bit << (system + ancilla + doubling)) |
           (doubling_value << doubling_offset()) |
           (ancilla_value << ancilla_offset()) | system_value;
  }

  friend bool operator==(const RegisterLayout&,
                         const RegisterLayout&) = default;
};

/// Conjunction of (qubit == bit) conditions on basis indices.
struct Control {
  Index mask = 0;
  Index value = 0;

  static Control none() { return {}; }
  static Control on(int qubit, bool bit = true) {
    return Control{}.require(qubit, bit);
  }

  Control& require(int qubit, bool bit) {
    const Index b = Index{1} << qubit;
    if ((mask & b) && (((value & b) != 0) != bit)) {
      throw ConfigurationError("contradictory control on qubit " +
                               std::to_string(qubit));
    }
    mask |= b;
    value = bit ? (value | b) : (value & ~b);
    return *this;
  }

  bool empty() const noexcept { return mask == 0; }
  bool accepts(Index i) const noexcept { return (i & mask) == value; }

  friend Control operator&(Control a, const Control& b) {
    for (int q = 0; q < 64; ++q) {
      const Index bit = Index{1} << q;
      if (b.mask & bit) a.require(q, (b.value & bit) != 0);
    }
    return a;
  }
};

template <typename Real>
class BasicStateVector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// |0...0> on the given layout.
  explicit BasicStateVector(const RegisterLayout& layout) : layout_(layout) {
    if (layout.total_qubits() > kMaxStateQubits) {
      throw MemoryCapError("statevector of " +
                           std::to_string(layout.total_qubits()) +
                           " qubits exceeds the engine ceiling");
    }
    amps_ = Vector::Zero(static_cast<Eigen::Index>(layout.dimension()));
    amps_(0) = Scalar(1);
  }

  const RegisterLayout& layout() const noexcept { return layout_; }
  Index dimension() const noexcept { return static_cast<Index>(amps_.size()); }

  Vector& amplitudes() noexcept { return amps_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  Scalar* data() noexcept { return amps_.data(); }
  const Scalar* data() const noexcept { return amps_.data(); }

  Scalar operator[](Index i) const { return amps_(static_cast<Eigen::Index>(i)); }
  Scalar& operator[](Index i) { return amps_(static_cast<Eigen::Index>(i)); }

  Real norm() const { return amps_.norm(); }

  /// False after a projection; unitary primitives leave the flag alone.
  bool normalized() const noexcept { return normalized_; }
  void mark_unnormalized() noexcept { normalized_ = false; }

 private:
  RegisterLayout layout_;
  Vector amps_;
  bool normalized_ = true;
};

using StateVector = BasicStateVector<double>;

namespace detail {

inline void require_disjoint(const Control& control, Index mask,
                             const char* what) {
  if (control.mask & mask) {
    throw ConfigurationError(std::string("control overlaps the ") + what +
                             " register");
  }
}

/// Applies factor * X^x Z^z to one contiguous block of 2^w amplitudes.
/// `factor` already includes the i^{#Y} of the string.
template <typename Scalar>
void apply_pauli_block(Scalar* block, Index size, Index x, Index z,
                       Scalar factor) {
  auto signed_factor = [&](Index b) {
    return (std::popcount(b & z) & 1) ? -factor : factor;
  };
  if (x == 0) {
    if (z == 0) {
      if (factor == Scalar(1)) return;
      for (Index b = 0; b < size; ++b) block[b] *= factor;
      return;
    }
    for (Index b = 0; b < size; ++b) block[b] *= signed_factor(b);
    return;
  }
  // Each pair (b, b ^ x) is visited once, from the member whose highest
  // flipped bit is clear.
  const Index top = Index{1} << (std::bit_width(x) - 1);
  for (Index b = 0; b < size; ++b) {
    if (b & top) continue;
    const Index p = b ^ x;
    const Scalar from_b = signed_factor(b) * block[b];
    const Scalar from_p = signed_factor(p) * block[p];
    block[p] = from_b;
    block[b] = from_p;
  }
}

template <typename Scalar>
Scalar pauli_factor(const PauliTerm& term) {
  static constexpr std::complex<double> kIPow[] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto f = term.coeff * kIPow[term.string.y_count() % 4];
  return Scalar(static_cast<typename Scalar::value_type>(f.real()),
                static_cast<typename Scalar::value_type>(f.imag()));
}

}  // namespace detail

/**
 * Places `system_state` in the sector where every non-system register is
 * zero. Throws NormalizationError unless the input has unit norm (1e-10).
 */
template <typename Real = double>
BasicStateVector<Real> prepare(const RegisterLayout& layout,
                               const Eigen::VectorXcd& system_state) {
  const auto dim = Eigen::Index{1} << layout.system;
  if (system_state.size() != dim) {
    throw DimensionError("system state has dimension " +
                         std::to_string(system_state.size()) + ", expected " +
                         std::to_string(dim));
  }
  if (std::abs(system_state.norm() - 1.0) > 1e-10) {
    throw NormalizationError("system state is not normalized");
  }
  BasicStateVector<Real> state(layout);
  state.amplitudes().head(dim) = system_state.template cast<std::complex<Real>>();
  return state;
}

/**
 * Applies a unit-modulus Pauli term to the system register on every basis
 * index accepted by `control`. Control qubits must lie outside the system
 * register.
 */
template <typename Real>
void apply_pauli_term(BasicStateVector<Real>& state, const PauliTerm& term,
                      const Control& control = {}) {
  using Scalar = std::complex<Real>;
  const auto& layout = state.layout();
  if (term.string.size() != layout.system) {
    throw DimensionError("Pauli term width does not match the system register");
  }
  if (std::abs(std::abs(term.coeff) - 1.0) > 1e-12) {
    throw NotUnitaryError("Pauli term coefficient must have unit modulus");
  }
  detail::require_disjoint(control, layout.system_mask(), "system");

  const Index block = Index{1} << layout.system;
  const Index blocks = state.dimension() >> layout.system;
  const Index x = term.string.x_mask();
  const Index z = term.string.z_mask();
  const Scalar factor = detail::pauli_factor<Scalar>(term);
  Scalar* amps = state.data();
  for (Index hi = 0; hi < blocks; ++hi) {
    if (!control.accepts(hi << layout.system)) continue;
    detail::apply_pauli_block(amps + hi * block, block, x, z, factor);
  }
}

/**
 * 2|0><0| - I on the selected qubits: amplitudes whose selected bits are all
 * zero are kept, every other amplitude (that passes `control`) is negated.
 */
template <typename Real>
void reflect_about_zero(BasicStateVector<Real>& state, Index register_mask,
                        const Control& control = {}) {
  if (register_mask == 0) {
    throw LayoutError("reflect_about_zero needs a nonempty register");
  }
  detail::require_disjoint(control, register_mask, "reflected");
  auto& amps = state.amplitudes();
  for (Index i = 0; i < state.dimension(); ++i) {
    if ((i & register_mask) != 0 && control.accepts(i)) {
      amps(static_cast<Eigen::Index>(i)) = -amps(static_cast<Eigen::Index>(i));
    }
  }
}

/**
 * X on `flip_qubit` wherever the watched bits are not all zero. This is the
 * doubling permutation: it moves every leaked (nonzero-ancilla) component out
 * of the flip qubit's zero sector and fixes the all-zero subspace.
 */
template <typename Real>
void flip_if_nonzero(BasicStateVector<Real>& state, int flip_qubit,
                     Index watched_mask, const Control& control = {}) {
  const Index fbit = Index{1} << flip_qubit;
  if (watched_mask & fbit) {
    throw ConfigurationError("flip qubit is part of the watched register");
  }
  if (flip_qubit >= state.layout().total_qubits()) {
    throw LayoutError("flip qubit outside the register");
  }
  detail::require_disjoint(control, fbit, "flip");
  auto* amps = state.data();
  for (Index i = 0; i < state.dimension(); ++i) {
    if ((i & fbit) || (i & watched_mask) == 0 || !control.accepts(i)) continue;
    std::swap(amps[i], amps[i | fbit]);
  }
}

/**
 * Projects onto the sector where every ancilla and doubling qubit is zero.
 * Returns the 2-norm of what survives; the state is left unnormalized.
 */
template <typename Real>
Real project_ancilla_zero(BasicStateVector<Real>& state) {
  const auto& layout = state.layout();
  const Index drop = layout.ancilla_mask() | layout.doubling_mask();
  auto& amps = state.amplitudes();
  Real kept = 0;
  for (Index i = 0; i < state.dimension(); ++i) {
    auto& a = amps(static_cast<Eigen::Index>(i));
    if (i & drop) {
      a = 0;
    } else {
      kept += std::norm(a);
    }
  }
  state.mark_unnormalized();
  return std::sqrt(kept);
}

struct PhaseStatistics {
  double p0 = 0.0;
  double p1 = 0.0;
};

/// Summed |amp|^2 on each value of the phase qubit (not renormalized).
template <typename Real>
PhaseStatistics phase_qubit_statistics(const BasicStateVector<Real>& state) {
  const Index pbit = Index{1} << state.layout().phase_qubit();
  PhaseStatistics out;
  const auto& amps = state.amplitudes();
  for (Index i = 0; i < state.dimension(); ++i) {
    const double w = std::norm(amps(static_cast<Eigen::Index>(i)));
    (i & pbit ? out.p1 : out.p0) += w;
  }
  return out;
}

template <typename Real>
void apply_hadamard(BasicStateVector<Real>& state, int qubit) {
  const Index bit = Index{1} << qubit;
  const Real r = Real(1) / std::sqrt(Real(2));
  auto* amps = state.data();
  for (Index i = 0; i < state.dimension(); ++i) {
    if (i & bit) continue;
    const auto a = amps[i];
    const auto b = amps[i | bit];
    amps[i] = r * (a + b);
    amps[i | bit] = r * (a - b);
  }
}

/// diag(1, e^{i angle}) on `qubit`.
template <typename Real>
void apply_phase_rotation(BasicStateVector<Real>& state, int qubit,
                          double angle) {
  if (angle == 0.0) return;
  const Index bit = Index{1} << qubit;
  const std::complex<Real> phase(static_cast<Real>(std::cos(angle)),
                                 static_cast<Real>(std::sin(angle)));
  auto* amps = state.data();
  for (Index i = 0; i < state.dimension(); ++i) {
    if (i & bit) amps[i] *= phase;
  }
}

/**
 * Multiplies every contiguous block of the low `log2(m.rows())` qubits by the
 * dense matrix `m`, on blocks whose base index passes `control`.
 */
template <typename Real>
void apply_low_block_matrix(BasicStateVector<Real>& state,
                            const Eigen::MatrixXcd& m,
                            const Control& control = {}) {
  using Vector = typename BasicStateVector<Real>::Vector;
  const auto size = static_cast<Index>(m.rows());
  if (m.rows() != m.cols() || !std::has_single_bit(size) ||
      size > state.dimension()) {
    throw DimensionError("block matrix does not fit the register");
  }
  const int width = std::countr_zero(size);
  detail::require_disjoint(control, RegisterLayout::bits(0, width), "block");
  const auto cast = m.cast<std::complex<Real>>().eval();
  auto& amps = state.amplitudes();
  const auto n = static_cast<Eigen::Index>(size);
  Vector tmp(n);
  for (Index hi = 0; hi < (state.dimension() >> width); ++hi) {
    if (!control.accepts(hi << width)) continue;
    auto seg = amps.segment(static_cast<Eigen::Index>(hi << width), n);
    tmp.noalias() = cast * seg;
    seg = tmp;
  }
}

/// Amplitudes of the sector where every non-system register is zero.
template <typename Real>
Eigen::VectorXcd system_slice(const BasicStateVector<Real>& state) {
  return state.amplitudes()
      .head(Eigen::Index{1} << state.layout().system)
      .template cast<std::complex<double>>();
}

// ---------------------------------------------------------------------------
// Debug dumps: 16-byte header "LCUPEA\0\0" + u16 m + 6 zero bytes, then
// little-endian (float64 re, float64 im) pairs in index order.
// ---------------------------------------------------------------------------

struct StateDump {
  int qubits = 0;
  Eigen::VectorXcd amplitudes;
};

void write_state_dump(const std::filesystem::path& path,
                      const StateVector& state);
StateDump read_state_dump(const std::filesystem::path& path);

}  // namespace lcupea
