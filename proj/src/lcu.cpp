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

#include "lcupea/lcu.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace lcupea {

int ceil_log2(std::size_t v) {
  if (v <= 1) return 0;
  return static_cast<int>(std::bit_width(v - 1));
}

Eigen::VectorXd LcuOperator::prepare_column() const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(Eigen::Index{1} << ancilla_width);
  for (std::size_t l = 0; l < betas.size(); ++l) {
    w(static_cast<Eigen::Index>(l)) = std::sqrt(betas[l] / s);
  }
  return w;
}

LcuOperator make_lcu(double kappa, std::vector<double> betas,
                     std::vector<PauliTerm> terms) {
  if (betas.empty() || betas.size() != terms.size()) {
    throw ParameterError("LCU needs one weight per term");
  }
  const int n = terms.front().string.size();
  for (const auto& t : terms) {
    if (t.string.size() != n) throw DimensionError("LCU terms differ in width");
    if (std::abs(std::abs(t.coeff) - 1.0) > 1e-12) {
      throw NotUnitaryError("LCU term " + t.string.word() +
                            " has a non-unit coefficient");
    }
  }
  for (double b : betas) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ParameterError("LCU weights must be finite and nonnegative");
    }
  }
  const double s = std::accumulate(betas.begin(), betas.end(), 0.0);
  if (s <= 0.0) throw DegenerateError("LCU weights sum to zero");

  LcuOperator lcu;
  lcu.kappa = kappa;
  lcu.n = n;
  lcu.ancilla_width = ceil_log2(betas.size());
  lcu.betas = std::move(betas);
  lcu.terms = std::move(terms);
  lcu.s = s;

  Eigen::VectorXd u = -lcu.prepare_column();
  u(0) += 1.0;
  const double uu = u.squaredNorm();
  lcu.householder = u;
  lcu.householder_scale = uu < 1e-30 ? 0.0 : 2.0 / uu;
  return lcu;
}

KappaChoice choose_kappa(const PauliSum& h, double factor) {
  if (!(factor >= 1.0)) throw ParameterError("kappa factor must be >= 1");
  const PauliSum c = h.canonical();
  if (c.empty()) throw DegenerateError("cannot scale an empty Hamiltonian");
  if (c.num_qubits() <= kDenseQubitCap) {
    const double norm1 = to_dense(c).cwiseAbs().colwise().sum().maxCoeff();
    return {factor * norm1, false};
  }
  return {factor * c.coefficient_one_norm(), true};
}

LcuOperator build_htilde(const PauliSum& h, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ParameterError("kappa must be positive");
  }
  const PauliSum c = h.canonical();
  const int n = c.num_qubits();
  std::vector<double> betas{1.0};
  std::vector<PauliTerm> terms{{1.0, PauliString(n)}};
  for (const auto& t : c) {
    const double mag = std::abs(t.coeff);
    betas.push_back(mag / kappa);
    terms.push_back({Complex(0.0, -1.0) * (t.coeff / mag), t.string});
  }
  return make_lcu(kappa, std::move(betas), std::move(terms));
}

DenseMatrix htilde_dense(const PauliSum& h, double kappa) {
  const DenseMatrix dense = to_dense(h);
  return DenseMatrix::Identity(dense.rows(), dense.cols()) -
         Complex(0.0, 1.0 / kappa) * dense;
}

DenseMatrix lcu_dense(const LcuOperator& lcu) {
  const auto dim = Eigen::Index{1} << lcu.n;
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (std::size_t l = 0; l < lcu.size(); ++l) {
    out += lcu.betas[l] * lcu.terms[l].coeff * to_dense(lcu.terms[l].string);
  }
  return out;
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()(0);
}

DenseMatrix extract_block(const StateOperator& op,
                          const RegisterLayout& layout) {
  if (layout.total_qubits() > kBlockExtractionQubitCap) {
    throw SizeError("block extraction limited to " +
                    std::to_string(kBlockExtractionQubitCap) + " qubits");
  }
  const auto dim = Eigen::Index{1} << layout.system;
  DenseMatrix block(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector state(layout);
    state[0] = 0.0;
    state[static_cast<Index>(j)] = 1.0;
    op(state);
    block.col(j) = system_slice(state);
  }
  return block;
}

DenseMatrix extract_block(const StateOperator& op, int ancilla_width, int n) {
  return extract_block(op, RegisterLayout(0, 0, ancilla_width, n));
}

std::string_view to_string(PowerStrategy s) {
  switch (s) {
    case PowerStrategy::successive: return "successive";
    case PowerStrategy::permutation: return "permutation";
    case PowerStrategy::exact_oracle: return "exact_oracle";
  }
  return "unknown";
}

std::optional<PowerStrategy> parse_strategy(std::string_view s) {
  if (s == "successive") return PowerStrategy::successive;
  if (s == "permutation") return PowerStrategy::permutation;
  if (s == "exact_oracle") return PowerStrategy::exact_oracle;
  return std::nullopt;
}

ResourceReport estimate_resources(int n, int terms, int bits,
                                  PowerStrategy strategy) {
  if (n < 1 || terms < 1 || bits < 1) {
    throw ParameterError("resource inputs must all be >= 1");
  }
  ResourceReport r;
  r.ancilla_qubits = ceil_log2(static_cast<std::size_t>(terms) + 1);
  switch (strategy) {
    case PowerStrategy::successive:
      r.qubits = n + 1 + r.ancilla_qubits;
      break;
    case PowerStrategy::permutation:
      r.qubits = bits + n + r.ancilla_qubits;
      break;
    case PowerStrategy::exact_oracle:
      // Phase qubit plus system; no block encoding.
      r.qubits = n + 1;
      r.ancilla_qubits = 0;
      break;
  }
  r.op_count_bound = std::ldexp(1.0, bits) * n * terms;
  return r;
}

}  // namespace lcupea
