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

#include "lcupea/amplification.hpp"

#include <cmath>
#include <numbers>

namespace lcupea {

TuneResult tune_m(const LcuOperator& lcu, const Eigen::VectorXcd& probe,
                  int m_max) {
  if (m_max < 0) throw ParameterError("m_max must be nonnegative");
  const RegisterLayout layout(0, 0, lcu.ancilla_width, lcu.n);
  StateVector state = prepare(layout, probe);
  apply_u1(state, lcu);

  TuneResult out;
  double best = -1.0;
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0) apply_Q(state, lcu);
    StateVector projected = state;
    const double kept = project_ancilla_zero(projected);
    out.kept_norms.push_back(kept);
    if (kept > best) {
      best = kept;
      out.best_m = m;
    }
  }
  return out;
}

double ideal_amplification_gain(const LcuOperator& lcu, int m) {
  const double theta = std::asin(std::min(1.0, 1.0 / lcu.s));
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::sin((2 * m + 1) * theta) / std::sin(theta);
}

BlockErrorReport amplified_block_error(const LcuOperator& lcu, int m) {
  if (m < 0) throw ParameterError("m must be nonnegative");
  const AmplifiedOperator op{lcu, m};
  const DenseMatrix block = extract_block(
      [&](StateVector& s) { apply_amplified(s, op); }, lcu.ancilla_width, lcu.n);
  const DenseMatrix htilde = lcu_dense(lcu);
  const DenseMatrix target = htilde / lcu.s;

  BlockErrorReport r;
  r.gain = ideal_amplification_gain(lcu, m);
  r.error = spectral_norm(block - r.gain * target);
  r.unscaled_error = spectral_norm(block - target);
  r.unitarity_distance = spectral_norm(
      htilde * htilde.adjoint() -
      DenseMatrix::Identity(htilde.rows(), htilde.cols()));
  return r;
}

}  // namespace lcupea
