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

// Oblivious amplitude amplification of the ancilla-zero block of U1.

#pragma once

#include <vector>

#include "lcupea/lcu.hpp"

namespace lcupea {

/// Q^m U1 over a fixed LCU.
struct AmplifiedOperator {
  LcuOperator base;
  int repetitions = 0;
};

/**
 * Q = U1 (R x I) U1' (R x I), with R = 2|0><0| - I on the ancilla register.
 * The system register is never touched by the reflections.
 */
template <typename Real>
void apply_Q(BasicStateVector<Real>& state, const LcuOperator& lcu,
             const Control& control = {}) {
  const Index ancilla = state.layout().ancilla_mask();
  if (ancilla == 0) {
    // With no index register U1 is the identity and so is Q.
    return;
  }
  reflect_about_zero(state, ancilla, control);
  apply_u1(state, lcu, control, /*adjoint=*/true);
  reflect_about_zero(state, ancilla, control);
  apply_u1(state, lcu, control);
}

/// Q^m U1. With m == 0 this is exactly apply_u1.
template <typename Real>
void apply_amplified(BasicStateVector<Real>& state, const AmplifiedOperator& op,
                     const Control& control = {}) {
  apply_u1(state, op.base, control);
  for (int r = 0; r < op.repetitions; ++r) apply_Q(state, op.base, control);
}

struct TuneResult {
  int best_m = 0;
  /// kept_norms[m] = ||P_0 Q^m U1 |0>|probe>||
  std::vector<double> kept_norms;
};

/// Scans m in [0, m_max]; ties go to the smallest m.
TuneResult tune_m(const LcuOperator& lcu, const Eigen::VectorXcd& probe,
                  int m_max = 16);

/// (-1)^m sin((2m+1) theta) / sin(theta) with sin(theta) = 1/s: the factor by
/// which m rounds of Q scale the block when H~/s is s^-1 times a unitary.
double ideal_amplification_gain(const LcuOperator& lcu, int m);

struct BlockErrorReport {
  /// ||<0|Q^m U1|0> - gain_m * H~/s||_2
  double error = 0.0;
  /// ||H~ H~' - I||_2 = ||H^2||_2 / kappa^2
  double unitarity_distance = 0.0;
  double gain = 1.0;
  /// ||<0|Q^m U1|0> - H~/s||_2, against the unamplified block.
  double unscaled_error = 0.0;
};

BlockErrorReport amplified_block_error(const LcuOperator& lcu, int m);

}  // namespace lcupea
