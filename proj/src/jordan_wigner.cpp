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

#include <cmath>

#include "lcupea/errors.hpp"
#include "lcupea/pauli.hpp"

namespace lcupea {

PauliSum jordan_wigner(LadderOperator op, int n) {
  if (op.mode < 0 || op.mode >= n) {
    throw IndexError("ladder mode " + std::to_string(op.mode) +
                     " out of range for " + std::to_string(n) + " qubits");
  }
  PauliString tail(n);
  for (int k = 0; k < op.mode; ++k) tail.set(k, Pauli::Z);

  PauliString x_part = tail;
  x_part.set(op.mode, Pauli::X);
  PauliString y_part = tail;
  y_part.set(op.mode, Pauli::Y);

  const double y_sign = op.raising ? -1.0 : 1.0;
  PauliSum out(n);
  out.add(0.5, x_part);
  out.add(Complex(0.0, 0.5 * y_sign), y_part);
  return out;
}

PauliSum ladder_product(std::span<const LadderOperator> ops, int n) {
  PauliSum acc = PauliSum::identity(n);
  for (const auto& op : ops) acc = acc * jordan_wigner(op, n);
  return acc.canonical();
}

PauliSum ladder_product(std::initializer_list<LadderOperator> ops, int n) {
  return ladder_product(std::span<const LadderOperator>(ops.begin(), ops.size()),
                        n);
}

DenseMatrix ReflectionSum::reflection(std::size_t j) const {
  DenseMatrix r = DenseMatrix::Identity(dim, dim);
  if (j == 0) return r;
  const auto& x = axes.at(j);
  r -= 2.0 * x * x.adjoint();
  return r;
}

DenseMatrix ReflectionSum::dense() const {
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    out += coeffs[j] * reflection(j);
  }
  return out;
}

ReflectionSum rank_one_decompose(std::span<const Eigen::VectorXcd> vectors) {
  if (vectors.empty()) throw ParameterError("no vectors to decompose");
  ReflectionSum out;
  out.dim = static_cast<int>(vectors.front().size());
  const auto count = static_cast<double>(vectors.size());
  out.coeffs.push_back(count / 2.0);
  out.axes.emplace_back();
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const auto& x = vectors[j];
    if (x.size() != out.dim) {
      throw DimensionError("vector " + std::to_string(j) + " has dimension " +
                           std::to_string(x.size()));
    }
    if (std::abs(x.norm() - 1.0) > 1e-12) {
      throw NormalizationError("vector " + std::to_string(j) +
                               " is not normalized");
    }
    out.coeffs.push_back(-0.5);
    out.axes.push_back(x);
  }
  return out;
}

}  // namespace lcupea
