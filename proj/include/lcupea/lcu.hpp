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

// Block encoding of H~ = I - iH/kappa as a linear combination of unitaries.
//
// U1 = (B' x I) select(V) (B x I) with B|0> = sum_l sqrt(beta_l / s)|l>, so
// that <0|U1|0> = H~ / s with s = sum_l beta_l.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcupea/pauli.hpp"
#include "lcupea/state.hpp"

namespace lcupea {

/// Largest register (in qubits) for which dense block extraction is allowed.
inline constexpr int kBlockExtractionQubitCap = 12;

struct LcuOperator {
  double kappa = 1.0;
  int n = 0;               // system qubits
  int ancilla_width = 0;   // ceil(log2(size()))
  std::vector<double> betas;
  std::vector<PauliTerm> terms;  // unit-modulus coefficients
  double s = 0.0;                // sum of betas

  // B is the Householder reflection I - scale * u u^T with u = e0 - w and
  // w = sqrt(betas / s). scale == 0 when w == e0 (B = I).
  Eigen::VectorXd householder;
  double householder_scale = 0.0;

  std::size_t size() const noexcept { return betas.size(); }
  /// First column of B: sqrt(beta_l / s), zero-padded to 2^ancilla_width.
  Eigen::VectorXd prepare_column() const;
};

/// Builds an LCU from explicit weights and unit-modulus terms.
LcuOperator make_lcu(double kappa, std::vector<double> betas,
                     std::vector<PauliTerm> terms);

struct KappaChoice {
  double kappa = 0.0;
  /// True when the coefficient 1-norm stood in for the induced matrix
  /// 1-norm (n above the dense cap).
  bool used_coefficient_bound = false;
};

/// factor * ||H||_1, the induced (max column sum) norm of dense(H).
KappaChoice choose_kappa(const PauliSum& h, double factor = 10.0);

/**
 * Term 0 is (1, I); every Hamiltonian term a_l P_l contributes
 * (|a_l|/kappa, -i sign(a_l) P_l), so all weights are nonnegative.
 * Complex coefficients use their phase in place of sign().
 */
LcuOperator build_htilde(const PauliSum& h, double kappa);

/// Dense I - iH/kappa.
DenseMatrix htilde_dense(const PauliSum& h, double kappa);

/// Dense sum_l beta_l V_l (equals htilde_dense for build_htilde output).
DenseMatrix lcu_dense(const LcuOperator& lcu);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

namespace detail {

inline void check_lcu_layout(const RegisterLayout& layout,
                             const LcuOperator& lcu) {
  if (layout.system != lcu.n) {
    throw LayoutError("system register width does not match the operator");
  }
  if (layout.ancilla < lcu.ancilla_width) {
    throw LayoutError("ancilla register narrower than the LCU index");
  }
}

}  // namespace detail

/// Applies B (or B', identical since the Householder reflection is
/// Hermitian) to the low ancilla_width ancilla qubits.
template <typename Real>
void apply_B(BasicStateVector<Real>& state, const LcuOperator& lcu,
             bool inverse = false, const Control& control = {}) {
  (void)inverse;
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto& layout = state.layout();
  detail::check_lcu_layout(layout, lcu);
  if (lcu.householder_scale == 0.0) return;

  const int chunk_bits = lcu.n + lcu.ancilla_width;
  detail::require_disjoint(control, RegisterLayout::bits(0, chunk_bits),
                           "ancilla/system");
  const auto rows = Eigen::Index{1} << lcu.n;
  const auto cols = Eigen::Index{1} << lcu.ancilla_width;
  const Vector u = lcu.householder.cast<Scalar>();
  const Real scale = static_cast<Real>(lcu.householder_scale);
  Vector dot(rows);
  for (Index hi = 0; hi < (state.dimension() >> chunk_bits); ++hi) {
    const Index base = hi << chunk_bits;
    if (!control.accepts(base)) continue;
    Eigen::Map<Matrix> chunk(state.data() + base, rows, cols);
    dot.noalias() = chunk * u;
    chunk.noalias() -= scale * dot * u.transpose();
  }
}

/**
 * select(V): on ancilla value l <= L, applies V_l (or V_l' when `adjoint`)
 * to the system register; larger ancilla values act as the identity.
 */
template <typename Real>
void apply_select_v(BasicStateVector<Real>& state, const LcuOperator& lcu,
                    const Control& control = {}, bool adjoint = false) {
  using Scalar = std::complex<Real>;
  const auto& layout = state.layout();
  detail::check_lcu_layout(layout, lcu);
  const int chunk_bits = layout.system + layout.ancilla;
  detail::require_disjoint(control, RegisterLayout::bits(0, chunk_bits),
                           "ancilla/system");

  struct Prepared {
    Index x, z;
    Scalar factor;
  };
  std::vector<Prepared> ops;
  ops.reserve(lcu.size());
  for (const auto& t : lcu.terms) {
    PauliTerm term = t;
    if (adjoint) term.coeff = std::conj(term.coeff);
    ops.push_back({term.string.x_mask(), term.string.z_mask(),
                   detail::pauli_factor<Scalar>(term)});
  }
  const Index block = Index{1} << layout.system;
  const Index used = std::min<Index>(ops.size(), Index{1} << layout.ancilla);
  for (Index hi = 0; hi < (state.dimension() >> chunk_bits); ++hi) {
    const Index base = hi << chunk_bits;
    if (!control.accepts(base)) continue;
    for (Index a = 0; a < used; ++a) {
      const auto& op = ops[a];
      detail::apply_pauli_block(state.data() + base + a * block, block, op.x,
                                op.z, op.factor);
    }
  }
}

/// U1 = B' select(V) B (or its adjoint), every factor sharing `control`.
template <typename Real>
void apply_u1(BasicStateVector<Real>& state, const LcuOperator& lcu,
              const Control& control = {}, bool adjoint = false) {
  apply_B(state, lcu, false, control);
  apply_select_v(state, lcu, control, adjoint);
  apply_B(state, lcu, true, control);
}

using StateOperator = std::function<void(StateVector&)>;

/**
 * Dense <0|op|0> over every non-system register of `layout`: column j is the
 * all-zero-sector component of op(|0>|e_j>). Capped at 2^12 amplitudes.
 */
DenseMatrix extract_block(const StateOperator& op, const RegisterLayout& layout);
DenseMatrix extract_block(const StateOperator& op, int ancilla_width, int n);

// ---------------------------------------------------------------------------
// Strategies and resource accounting
// ---------------------------------------------------------------------------

enum class PowerStrategy { successive, permutation, exact_oracle };

std::string_view to_string(PowerStrategy s);
std::optional<PowerStrategy> parse_strategy(std::string_view s);

struct ResourceReport {
  int qubits = 0;
  int ancilla_qubits = 0;  // ceil(log2(L + 1))
  /// 2^a * n * L, the operation bound with its constant taken as 1.
  double op_count_bound = 0.0;
};

/// `terms` is L, the number of Hamiltonian terms (the identity term of H~
/// makes the LCU index range L + 1).
ResourceReport estimate_resources(int n, int terms, int bits,
                                  PowerStrategy strategy);

int ceil_log2(std::size_t v);

}  // namespace lcupea
