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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lcupea/pea.hpp"
#include "oracles.hpp"

namespace lcupea {
namespace {

constexpr double kTol = 1e-12;
constexpr double kH2Kappa = 20.117;
constexpr double kPi = std::numbers::pi;

/// h = c Z with c = kappa tan(3 pi / 8): the eigenvector |1> of H~ has
/// eigenphase arg(1 + i c / kappa) / 2 pi = 3/16 = 0.0011 in binary.
PauliSum toy_three_sixteenths(double kappa) {
  PauliSum h(1);
  h.add(kappa * std::tan(3.0 * kPi / 8.0), PauliString::from_word("Z"));
  return h;
}

PeaConfig h2_config(PowerStrategy strategy, int bits, int m) {
  PeaConfig c;
  c.hamiltonian = build_h2();
  c.bits = bits;
  c.strategy = strategy;
  c.kappa = kH2Kappa;
  c.amplify_m = m;
  return c;
}

DenseMatrix composite_block(const AmplifiedOperator& op, int doubling,
                            const std::function<void(StateVector&)>& body) {
  (void)op;
  return extract_block(body, RegisterLayout(0, doubling, op.base.ancilla_width,
                                            op.base.n));
}

// ---------------------------------------------------------------------------
// Bit arithmetic
// ---------------------------------------------------------------------------

TEST(FeedbackAngle, BinaryFractionExamples) {
  EXPECT_EQ(feedback_angle(std::vector<int>{}), 0.0);
  EXPECT_DOUBLE_EQ(feedback_angle(std::vector<int>{1}), -kPi / 2);
  EXPECT_DOUBLE_EQ(feedback_angle(std::vector<int>{0, 1}), -kPi / 4);
  EXPECT_DOUBLE_EQ(feedback_angle(std::vector<int>{1, 1}), -3 * kPi / 4);
}

TEST(PhaseReassembly, ExhaustiveUpToEightBits) {
  for (int a = 1; a <= 8; ++a) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << a); ++x) {
      const double phase = std::ldexp(static_cast<double>(x), -a);
      EXPECT_EQ(phase_from_bits(bits_of(phase, a)), phase) << a << " " << x;
    }
  }
}

TEST(PhaseReassembly, BitsOfValidation) {
  EXPECT_EQ(bits_of(0.1875, 4), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_THROW(bits_of(1.0, 4), ParameterError);
  EXPECT_THROW(bits_of(-0.1, 4), ParameterError);
}

TEST(RecoverEnergy, Examples) {
  EXPECT_NEAR(recover_energy(0.014603, kH2Kappa), -1.8458, 1e-3);
  EXPECT_EQ(recover_energy(0.0, 3.0), 0.0);
  EXPECT_NEAR(recover_energy(0.25, 1.0), -kPi / 2, kTol);
}

TEST(RecoverEnergy, InvertsHtildeEigenphase) {
  // phase = arg(1 - i lambda / kappa) / 2 pi (mod 1) maps back to
  // kappa * atan(lambda / kappa).
  for (double lambda : {-1.9, -0.3, 0.0, 0.4, 2.0}) {
    double phase = std::atan2(-lambda / kH2Kappa, 1.0) / (2 * kPi);
    if (phase < 0) phase += 1.0;
    EXPECT_NEAR(recover_energy(phase, kH2Kappa),
                kH2Kappa * std::atan(lambda / kH2Kappa), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Controlled powers
// ---------------------------------------------------------------------------

TEST(SuccessivePower, KZeroIsOneControlledApplication) {
  std::mt19937_64 rng(61);
  const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), 2};
  const RegisterLayout layout(1, 0, op.base.ancilla_width, 4);
  StateVector a(layout);
  a.amplitudes() = oracle::random_state(static_cast<Eigen::Index>(a.dimension()), rng);
  StateVector b = a;
  const Control c = Control::on(layout.phase_qubit());
  controlled_power_successive(a, op, 0, c);
  apply_amplified(b, op, c);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
}

TEST(SuccessivePower, SquareDeviatesByAtMostTwiceTheDefect) {
  for (int m : {0, 6}) {
    const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), m};
    const DenseMatrix b0 = composite_block(op, 0, [&](StateVector& s) {
      controlled_power_successive(s, op, 0, {});
    });
    const DenseMatrix b1 = composite_block(op, 0, [&](StateVector& s) {
      controlled_power_successive(s, op, 1, {});
    });
    const double defect =
        spectral_norm(b0.adjoint() * b0 - DenseMatrix::Identity(16, 16));
    EXPECT_LE(spectral_norm(b1 - b0 * b0), 2.0 * defect + kTol) << m;
  }
}

TEST(SuccessivePower, CacheMatchesDirectLoop) {
  std::mt19937_64 rng(62);
  const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), 6};
  const RegisterLayout layout(1, 0, op.base.ancilla_width, 4);
  SuccessivePowerCache cache(op);
  EXPECT_EQ(cache.width(), 8);
  const Control c = Control::on(layout.phase_qubit());
  for (int k = 0; k <= 3; ++k) {
    StateVector a(layout);
    a.amplitudes() = oracle::random_state(static_cast<Eigen::Index>(a.dimension()), rng);
    StateVector b = a;
    controlled_power_successive(a, op, k, c);
    cache.apply(b, k, c);
    EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-11) << k;
  }
}

TEST(SuccessivePower, ControlZeroLeavesStateUnchanged) {
  std::mt19937_64 rng(63);
  const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), 6};
  const RegisterLayout layout(1, 0, op.base.ancilla_width, 4);
  StateVector s(layout);
  s.amplitudes().head(s.dimension() / 2) =
      oracle::random_state(static_cast<Eigen::Index>(s.dimension() / 2), rng);
  const auto before = s.amplitudes();
  controlled_power_successive(s, op, 2, Control::on(layout.phase_qubit()));
  EXPECT_EQ(s.amplitudes(), before);
  SuccessivePowerCache cache(op);
  cache.apply(s, 5, Control::on(layout.phase_qubit()));
  EXPECT_EQ(s.amplitudes(), before);
}

TEST(PermutationPower, BlockIsExactMatrixPower) {
  for (int m : {0, 6}) {
    const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), m};
    const DenseMatrix b0 = composite_block(op, 0, [&](StateVector& s) {
      controlled_power_permutation(s, op, 0, {});
    });
    for (int k = 1; k <= 3; ++k) {
      const DenseMatrix bk = composite_block(op, k, [&](StateVector& s) {
        controlled_power_permutation(s, op, k, {});
      });
      const DenseMatrix expected = oracle::matrix_power(b0, std::uint64_t{1} << k);
      EXPECT_LT(spectral_norm(bk - expected), 1e-12) << "m=" << m << " k=" << k;
    }
  }
}

TEST(PermutationPower, KZeroIsOneControlledApplication) {
  std::mt19937_64 rng(64);
  const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), 6};
  const RegisterLayout layout(1, 0, op.base.ancilla_width, 4);
  StateVector a(layout);
  a.amplitudes() = oracle::random_state(static_cast<Eigen::Index>(a.dimension()), rng);
  StateVector b = a;
  const Control c = Control::on(layout.phase_qubit());
  controlled_power_permutation(a, op, 0, c);
  apply_amplified(b, op, c);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
}

TEST(PermutationPower, OneAncillaToyMatchesDisplayedDoubling) {
  // h = 0.4 Z gives a two-term LCU, so the ancilla is a single qubit.
  PauliSum h(1);
  h.add(0.4, PauliString::from_word("Z"));
  const LcuOperator lcu = build_htilde(h, 1.0);
  ASSERT_EQ(lcu.ancilla_width, 1);
  const AmplifiedOperator op{lcu, 0};
  const RegisterLayout layout(0, 1, 1, 1);
  const oracle::Matrix level1 = oracle::full_matrix(
      [&](StateVector& s) { controlled_power_permutation(s, op, 1, {}); }, layout);

  // Dense oracle: (I (x) U1) Pi (I (x) U1), doubling qubit most significant.
  const oracle::Matrix iu = oracle::kron(oracle::Matrix::Identity(2, 2), oracle::u1(lcu));
  oracle::Matrix flip = oracle::Matrix::Zero(8, 8);  // flip d when ancilla set
  for (int i = 0; i < 8; ++i) flip((i & 2) ? (i ^ 4) : i, i) = 1.0;
  EXPECT_LT((level1 - iu * flip * iu).norm(), kTol);

  // The displayed construction swaps the (d=0, a=1) and (d=1, a=0) blocks;
  // both permutations give the same ancilla-zero corner, H~^2 / s^2.
  oracle::Matrix swap = oracle::Matrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    const int d = (i >> 2) & 1, a = (i >> 1) & 1;
    swap(((a << 2) | (d << 1) | (i & 1)), i) = 1.0;
  }
  const oracle::Matrix corner = htilde_dense(h, 1.0) * htilde_dense(h, 1.0) /
                                (lcu.s * lcu.s);
  EXPECT_LT((level1.topLeftCorner(2, 2) - corner).norm(), kTol);
  EXPECT_LT(((iu * swap * iu).topLeftCorner(2, 2) - corner).norm(), kTol);
}

TEST(PermutationPower, ControlZeroAndLayoutErrors) {
  std::mt19937_64 rng(65);
  const AmplifiedOperator op{build_htilde(build_h2(), kH2Kappa), 1};
  const RegisterLayout layout(1, 2, op.base.ancilla_width, 4);
  StateVector s(layout);
  s.amplitudes().head(s.dimension() / 2) =
      oracle::random_state(static_cast<Eigen::Index>(s.dimension() / 2), rng);
  const auto before = s.amplitudes();
  controlled_power_permutation(s, op, 2, Control::on(layout.phase_qubit()));
  EXPECT_EQ(s.amplitudes(), before);
  EXPECT_THROW(controlled_power_permutation(s, op, 3, {}), LayoutError);
}

TEST(ExactOracle, KZeroMatchesLcuBlock) {
  const PauliSum h = build_h2();
  const LcuOperator lcu = build_htilde(h, kH2Kappa);
  const DenseMatrix u1_block = extract_block(
      [&](StateVector& s) { apply_u1(s, lcu); }, lcu.ancilla_width, lcu.n);
  const DenseMatrix oracle_block = extract_block(
      [&](StateVector& s) { exact_oracle_power(s, h, kH2Kappa, 0, {}); },
      RegisterLayout(0, 0, 0, 4));
  EXPECT_LT((u1_block - oracle_block).norm(), kTol);
}

TEST(ExactOracle, PowersMatchRepeatedProducts) {
  const PauliSum h = build_h2();
  const LcuOperator lcu = build_htilde(h, kH2Kappa);
  const DenseMatrix base = htilde_dense(h, kH2Kappa) / lcu.s;
  const ExactPowerOracle lcu_oracle(h, kH2Kappa, lcu.s, OracleNormalization::lcu);
  const ExactPowerOracle unit_oracle(h, kH2Kappa, lcu.s,
                                     OracleNormalization::unitary);
  for (int k = 0; k <= 5; ++k) {
    const DenseMatrix expected = oracle::matrix_power(base, std::uint64_t{1} << k);
    EXPECT_LT((lcu_oracle.power(k) - expected).norm(), 1e-12) << k;
    const DenseMatrix u = unit_oracle.power(k);
    EXPECT_LT((u * u.adjoint() - DenseMatrix::Identity(16, 16)).norm(), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// run_ipea
// ---------------------------------------------------------------------------

TEST(RunIpea, ConstructedToyRecoversThreeSixteenths) {
  PeaConfig c;
  c.hamiltonian = toy_three_sixteenths(1.0);
  c.bits = 4;
  c.strategy = PowerStrategy::exact_oracle;
  c.kappa = 1.0;
  const PeaResult r = run_ipea(c);
  EXPECT_EQ(r.measured_bits(), "1100");
  EXPECT_EQ(r.bits, (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(r.phase, 0.1875);
  // Exact phase with a unitary block: every gap is exactly 1.
  for (const auto& rec : r.records) {
    EXPECT_NEAR(std::abs(rec.p1_unnorm - rec.p0_unnorm), 1.0, 1e-10) << rec.k;
    EXPECT_FALSE(rec.degenerate);
  }
  EXPECT_EQ(r.records.front().k, 3);
  EXPECT_EQ(r.records.back().k, 0);
}

TEST(RunIpea, ConstructedToyThroughBlockEncodingStrategies) {
  for (auto strategy : {PowerStrategy::successive, PowerStrategy::permutation}) {
    PeaConfig c;
    c.hamiltonian = toy_three_sixteenths(10.0);
    c.bits = 4;
    c.strategy = strategy;
    c.kappa = 10.0;
    c.amplify_m = std::nullopt;
    const PeaResult r = run_ipea(c);
    EXPECT_EQ(r.measured_bits(), "1100") << to_string(strategy);
  }
}

TEST(RunIpea, ExactOracleH2MeetsErrorBudget) {
  const PeaResult r = run_ipea(h2_config(PowerStrategy::exact_oracle, 25, 0));
  const double lambda = oracle::kH2GroundEnergy;
  const double resolution = std::ldexp(2 * kPi * kH2Kappa, -25);
  // The recovered value is kappa * atan(lambda / kappa) up to phase rounding.
  EXPECT_NEAR(r.energy, kH2Kappa * std::atan(lambda / kH2Kappa), resolution);
  const double cubic = std::pow(std::abs(lambda), 3) / (3 * kH2Kappa * kH2Kappa);
  EXPECT_LE(std::abs(r.energy - lambda), resolution + cubic);
  EXPECT_NEAR(r.exact_energy, lambda, 1e-10);
  EXPECT_DOUBLE_EQ(r.abs_error, std::abs(r.energy - r.exact_energy));
}

TEST(RunIpea, SuccessiveH2ShortRun) {
  const PeaResult r = run_ipea(h2_config(PowerStrategy::successive, 15, 6));
  EXPECT_LE(std::abs(r.energy - r.exact_energy), 0.006);
  EXPECT_EQ(r.amplify_m, 6);
}

TEST(RunIpea, StrategiesAgreeOnSixBits) {
  const PeaResult exact = run_ipea(h2_config(PowerStrategy::exact_oracle, 6, 0));
  const PeaResult perm = run_ipea(h2_config(PowerStrategy::permutation, 6, 6));
  EXPECT_EQ(perm.measured_bits(), exact.measured_bits());
  const PeaResult succ = run_ipea(h2_config(PowerStrategy::successive, 6, 6));
  for (std::size_t j = 0; j < succ.records.size(); ++j) {
    const auto& rec = succ.records[j];
    if (std::abs(rec.p1_unnorm - rec.p0_unnorm) > 1e-3) {
      EXPECT_EQ(rec.bit, exact.records[j].bit) << rec.k;
    }
  }
}

TEST(RunIpea, ProbabilityGapLaw) {
  for (auto strategy : {PowerStrategy::successive, PowerStrategy::permutation}) {
    for (int m : {0, 6}) {
      const PeaResult r = run_ipea(h2_config(strategy, 6, m));
      for (const auto& rec : r.records) {
        const double total = rec.p0_unnorm + rec.p1_unnorm;
        EXPECT_LE(std::abs(rec.p1_unnorm - rec.p0_unnorm), total + kTol);
        EXPECT_LE(total, 1.0 + kTol);
        EXPECT_NEAR(total, rec.kept_norm * rec.kept_norm, kTol);
      }
    }
  }
}

TEST(RunIpea, AutoAmplificationUsesTunedM) {
  PeaConfig c = h2_config(PowerStrategy::successive, 3, 0);
  c.amplify_m = std::nullopt;
  EXPECT_EQ(run_ipea(c).amplify_m, 6);
  c.strategy = PowerStrategy::exact_oracle;
  EXPECT_EQ(run_ipea(c).amplify_m, 0);
}

TEST(RunIpea, AutoKappaUsesInducedNorm) {
  PeaConfig c = h2_config(PowerStrategy::exact_oracle, 3, 0);
  c.kappa = std::nullopt;
  EXPECT_NEAR(run_ipea(c).kappa, kH2Kappa, 1e-12);
}

TEST(RunIpea, NegativeEigenvalueKeepsItsSign) {
  for (double c : {-0.3, 0.3}) {
    PeaConfig cfg;
    cfg.hamiltonian = PauliSum(1);
    cfg.hamiltonian.add(c, PauliString::from_word("Z"));
    cfg.bits = 12;
    cfg.strategy = PowerStrategy::exact_oracle;
    cfg.kappa = 3.0;
    cfg.eigenvector = EigenvectorSource::basis_state(0);  // eigenvalue c
    const PeaResult r = run_ipea(cfg);
    EXPECT_GT(r.energy * c, 0.0) << c;
    EXPECT_NEAR(r.energy, 3.0 * std::atan(c / 3.0), 2 * kPi * 3.0 / 4096) << c;
    EXPECT_DOUBLE_EQ(r.exact_energy, c);
  }
}

TEST(RunIpea, ZeroHamiltonianGivesZeroPhase) {
  for (auto strategy : {PowerStrategy::exact_oracle, PowerStrategy::successive,
                        PowerStrategy::permutation}) {
    PeaConfig c;
    c.hamiltonian = PauliSum(2);
    c.bits = 5;
    c.strategy = strategy;
    c.kappa = 1.0;
    const PeaResult r = run_ipea(c);
    EXPECT_EQ(r.phase, 0.0) << to_string(strategy);
    EXPECT_EQ(r.energy, 0.0);
  }
}

TEST(RunIpea, TiedProbabilitiesAreFlagged) {
  // h = Z, kappa = 1, eigenvector |1>: phase arg(1 + i) / 2 pi = 1/8. With
  // two bits the first iteration sees phase 1/4, an exact tie.
  PeaConfig c;
  c.hamiltonian = parse_hamiltonian("1 Z\n");
  c.bits = 2;
  c.strategy = PowerStrategy::exact_oracle;
  c.kappa = 1.0;
  c.eigenvector = EigenvectorSource::basis_state(1);
  const PeaResult r = run_ipea(c);
  EXPECT_TRUE(r.records[0].degenerate);
  EXPECT_EQ(r.records[0].bit, 0);
  EXPECT_NEAR(r.records[0].p0_unnorm, 0.5, 1e-15);
}

TEST(RunIpea, BitForBitDeterministic) {
  const PeaConfig c = h2_config(PowerStrategy::permutation, 5, 6);
  const PeaResult a = run_ipea(c);
  const PeaResult b = run_ipea(c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t j = 0; j < a.records.size(); ++j) {
    EXPECT_EQ(a.records[j].p0_unnorm, b.records[j].p0_unnorm);
    EXPECT_EQ(a.records[j].p1_unnorm, b.records[j].p1_unnorm);
    EXPECT_EQ(a.records[j].bit, b.records[j].bit);
  }
  EXPECT_EQ(a.phase, b.phase);
}

TEST(RunIpea, ShotReadoutIsSeededAndAgreesOnSharpBits) {
  PeaConfig c;
  c.hamiltonian = toy_three_sixteenths(1.0);
  c.bits = 4;
  c.strategy = PowerStrategy::exact_oracle;
  c.kappa = 1.0;
  c.readout = Readout::shots;
  c.shots = 101;
  c.seed = 7;
  EXPECT_EQ(run_ipea(c).measured_bits(), "1100");

  PeaConfig noisy = h2_config(PowerStrategy::permutation, 4, 0);
  noisy.readout = Readout::shots;
  noisy.shots = 5;
  noisy.seed = 3;
  EXPECT_EQ(run_ipea(noisy).measured_bits(), run_ipea(noisy).measured_bits());
}

TEST(RunIpea, Validation) {
  PeaConfig c = h2_config(PowerStrategy::successive, 0, 0);
  EXPECT_THROW(run_ipea(c), ParameterError);
  c.bits = 3;
  c.amplify_m = -1;
  EXPECT_THROW(run_ipea(c), ParameterError);
}

TEST(RunIpea, MemoryCap) {
  PeaConfig c = h2_config(PowerStrategy::permutation, 19, 0);  // 19 + 4 + 4
  EXPECT_THROW(run_ipea(c), MemoryCapError);
  c.mem_cap_qubits = 16;
  c.bits = 9;  // 17 qubits
  EXPECT_THROW(run_ipea(c), MemoryCapError);
}

TEST(RunIpea, EigenvectorSources) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "lcupea_vec_good.txt";
  const auto bad = dir / "lcupea_vec_bad.txt";
  {
    std::ofstream out(good);
    out << "# |1> of a one-qubit system, unnormalized\n0\n2 0\n";
    std::ofstream out2(bad);
    out2 << "1\n0\n0\n";
  }
  PeaConfig c;
  c.hamiltonian = toy_three_sixteenths(1.0);
  c.bits = 4;
  c.strategy = PowerStrategy::exact_oracle;
  c.kappa = 1.0;
  c.eigenvector = EigenvectorSource::file(good);
  EXPECT_EQ(run_ipea(c).measured_bits(), "1100");
  c.eigenvector = EigenvectorSource::file(bad);
  EXPECT_THROW(run_ipea(c), DimensionError);
  c.eigenvector = EigenvectorSource::basis_state(2);
  EXPECT_THROW(run_ipea(c), IndexError);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST(EigenvectorSource, ParseAndPrint) {
  EXPECT_EQ(EigenvectorSource::parse("exact_ground")->to_string(), "exact_ground");
  EXPECT_EQ(EigenvectorSource::parse("basis:5")->basis_index, 5u);
  EXPECT_EQ(EigenvectorSource::parse("file:v.txt")->to_string(), "file:v.txt");
  EXPECT_FALSE(EigenvectorSource::parse("basis:-1").has_value());
  EXPECT_FALSE(EigenvectorSource::parse("ground").has_value());
}

}  // namespace
}  // namespace lcupea
