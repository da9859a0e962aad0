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

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "lcupea/state.hpp"
#include "oracles.hpp"

namespace lcupea {
namespace {

constexpr double kTol = 1e-12;

StateVector random_full_state(const RegisterLayout& layout, std::mt19937_64& rng) {
  StateVector s(layout);
  s.amplitudes() =
      oracle::random_state(static_cast<Eigen::Index>(layout.dimension()), rng);
  return s;
}

// ---------------------------------------------------------------------------
// Layout and control
// ---------------------------------------------------------------------------

TEST(RegisterLayout, BitPositions) {
  const RegisterLayout l(1, 3, 4, 4);
  EXPECT_EQ(l.total_qubits(), 12);
  EXPECT_EQ(l.dimension(), Index{1} << 12);
  EXPECT_EQ(l.system_mask(), 0x00Fu);
  EXPECT_EQ(l.ancilla_mask(), 0x0F0u);
  EXPECT_EQ(l.doubling_mask(), 0x700u);
  EXPECT_EQ(l.phase_mask(), 0x800u);
  EXPECT_EQ(l.phase_qubit(), 11);
  EXPECT_EQ(l.ancilla_qubit(0), 4);
  EXPECT_EQ(l.doubling_qubit(2), 10);
  EXPECT_EQ(l.compose(1, 0b101, 0b0011, 0b1001), 0xD39u);
}

TEST(RegisterLayout, Errors) {
  EXPECT_THROW(RegisterLayout(2, 0, 0, 1), LayoutError);
  EXPECT_THROW(RegisterLayout(0, 0, 0, 1).phase_qubit(), LayoutError);
  EXPECT_THROW(RegisterLayout(0, 1, 0, 1).doubling_qubit(1), LayoutError);
}

TEST(Control, AcceptsAndConflicts) {
  Control c = Control::on(3) & Control::on(1, false);
  EXPECT_TRUE(c.accepts(0b1000));
  EXPECT_FALSE(c.accepts(0b1010));
  EXPECT_FALSE(c.accepts(0b0000));
  EXPECT_THROW(Control::on(2) & Control::on(2, false), ConfigurationError);
}

TEST(StateVector, StartsInZeroAndEnforcesCeiling) {
  const StateVector s(RegisterLayout(1, 0, 2, 3));
  EXPECT_EQ(s.dimension(), 64u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_NEAR(s.norm(), 1.0, kTol);
  EXPECT_TRUE(s.normalized());
  EXPECT_THROW(StateVector(RegisterLayout(1, 10, 10, 14)), MemoryCapError);
}

TEST(Prepare, PlacesSystemStateAndValidates) {
  std::mt19937_64 rng(21);
  const auto psi = oracle::random_state(8, rng);
  const StateVector s = prepare(RegisterLayout(1, 1, 2, 3), psi);
  EXPECT_LT((s.amplitudes().head(8) - psi).norm(), kTol);
  EXPECT_NEAR(s.amplitudes().tail(s.dimension() - 8).norm(), 0.0, kTol);
  EXPECT_THROW(prepare(RegisterLayout(0, 0, 0, 2), psi), DimensionError);
  EXPECT_THROW(prepare(RegisterLayout(0, 0, 0, 3), Eigen::VectorXcd(2.0 * psi)),
               NormalizationError);
}

// ---------------------------------------------------------------------------
// Pauli terms
// ---------------------------------------------------------------------------

TEST(ApplyPauliTerm, MatchesKroneckerOracle) {
  std::mt19937_64 rng(22);
  const Complex phases[] = {1.0, -1.0, Complex(0, 1), Complex(0, -1),
                            std::polar(1.0, 0.3)};
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const RegisterLayout layout(0, 0, 0, n);
    const auto w = oracle::random_word(n, rng);
    const Complex c = phases[trial % 5];
    StateVector s = random_full_state(layout, rng);
    const Eigen::VectorXcd expected = c * oracle::word(w) * s.amplitudes();
    apply_pauli_term(s, PauliTerm{c, PauliString::from_word(w)});
    EXPECT_LT((s.amplitudes() - expected).norm(), kTol) << w;
  }
}

TEST(ApplyPauliTerm, ControlledMatchesBlockDiagonalOracle) {
  std::mt19937_64 rng(23);
  const RegisterLayout layout(1, 0, 1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = oracle::random_word(3, rng);
    StateVector s = random_full_state(layout, rng);
    // Control on the phase qubit (top) with the ancilla bit free.
    const oracle::Matrix p1 = oracle::kron(
        oracle::Matrix::Identity(2, 2), oracle::word(w));
    oracle::Matrix full = oracle::Matrix::Identity(32, 32);
    full.block(16, 16, 16, 16) = p1;
    const Eigen::VectorXcd expected = full * s.amplitudes();
    apply_pauli_term(s, PauliTerm{1.0, PauliString::from_word(w)},
                     Control::on(layout.phase_qubit()));
    EXPECT_LT((s.amplitudes() - expected).norm(), kTol);
  }
}

TEST(ApplyPauliTerm, InvolutionAndErrors) {
  std::mt19937_64 rng(24);
  const RegisterLayout layout(0, 0, 0, 4);
  StateVector s = random_full_state(layout, rng);
  const auto before = s.amplitudes();
  const PauliTerm t{1.0, PauliString::from_word("XYZY")};
  apply_pauli_term(s, t);
  apply_pauli_term(s, t);
  EXPECT_LT((s.amplitudes() - before).norm(), kTol);
  EXPECT_THROW(apply_pauli_term(s, PauliTerm{2.0, PauliString::from_word("XXXX")}),
               NotUnitaryError);
  EXPECT_THROW(apply_pauli_term(s, PauliTerm{1.0, PauliString::from_word("XX")}),
               DimensionError);
  EXPECT_THROW(apply_pauli_term(s, t, Control::on(0)), ConfigurationError);
}

// ---------------------------------------------------------------------------
// Reflections, flips and projections
// ---------------------------------------------------------------------------

TEST(ReflectAboutZero, MatchesDenseReflectionAndIsInvolution) {
  std::mt19937_64 rng(25);
  const RegisterLayout layout(0, 0, 2, 2);
  StateVector s = random_full_state(layout, rng);
  const auto before = s.amplitudes();
  const oracle::Matrix r = oracle::ancilla_reflection(2, 4);
  reflect_about_zero(s, layout.ancilla_mask());
  EXPECT_LT((s.amplitudes() - r * before).norm(), kTol);
  reflect_about_zero(s, layout.ancilla_mask());
  EXPECT_LT((s.amplitudes() - before).norm(), kTol);
  EXPECT_THROW(reflect_about_zero(s, 0), LayoutError);
}

TEST(FlipIfNonzero, PermutationMatrixProperties) {
  const RegisterLayout layout(0, 2, 2, 1);
  const Index watched = layout.ancilla_mask() |
                        RegisterLayout::bits(layout.doubling_offset(), 1);
  const int flip = layout.doubling_qubit(1);
  const oracle::Matrix p = oracle::full_matrix(
      [&](StateVector& s) { flip_if_nonzero(s, flip, watched); }, layout);
  const auto dim = p.rows();
  EXPECT_LT((p * p - oracle::Matrix::Identity(dim, dim)).norm(), kTol);
  EXPECT_LT((p - p.transpose()).norm(), kTol);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto idx = static_cast<Index>(i);
    const Index target = (idx & watched) ? (idx ^ (Index{1} << flip)) : idx;
    EXPECT_EQ(p(static_cast<Eigen::Index>(target), i), Complex(1.0));
  }
}

TEST(FlipIfNonzero, OverlapIsConfigurationError) {
  StateVector s(RegisterLayout(0, 1, 1, 1));
  EXPECT_THROW(flip_if_nonzero(s, 2, 0b110), ConfigurationError);
  EXPECT_THROW(flip_if_nonzero(s, 5, 0b010), LayoutError);
}

TEST(ProjectAncillaZero, KeepsAllZeroSectorOnly) {
  std::mt19937_64 rng(26);
  const RegisterLayout layout(1, 1, 2, 2);
  StateVector s = random_full_state(layout, rng);
  double expected = 0.0;
  const Index drop = layout.ancilla_mask() | layout.doubling_mask();
  for (Index i = 0; i < s.dimension(); ++i) {
    if (!(i & drop)) expected += std::norm(s[i]);
  }
  const double kept = project_ancilla_zero(s);
  EXPECT_NEAR(kept, std::sqrt(expected), kTol);
  EXPECT_NEAR(s.norm(), kept, kTol);
  EXPECT_FALSE(s.normalized());
  for (Index i = 0; i < s.dimension(); ++i) {
    if (i & drop) EXPECT_EQ(s[i], Complex(0.0));
  }
}

TEST(PhaseStatistics, SumsBothBranchesUnnormalized) {
  const RegisterLayout layout(1, 0, 0, 1);
  StateVector s(layout);
  s[0] = 0.6;
  s[1] = 0.0;
  s[2] = Complex(0.0, 0.3);
  s[3] = 0.4;
  const auto st = phase_qubit_statistics(s);
  EXPECT_NEAR(st.p0, 0.36, kTol);
  EXPECT_NEAR(st.p1, 0.25, kTol);
}

TEST(SingleQubitGates, HadamardAndPhaseRotationMatchOracle) {
  std::mt19937_64 rng(27);
  const RegisterLayout layout(1, 0, 0, 2);
  StateVector s = random_full_state(layout, rng);
  const auto before = s.amplitudes();
  oracle::Matrix rot(2, 2);
  rot << 1, 0, 0, std::polar(1.0, 0.7);
  const oracle::Matrix id4 = oracle::Matrix::Identity(4, 4);
  const oracle::Matrix expected_op =
      oracle::kron(oracle::hadamard() * rot * oracle::hadamard(), id4);
  apply_hadamard(s, 2);
  apply_phase_rotation(s, 2, 0.7);
  apply_hadamard(s, 2);
  EXPECT_LT((s.amplitudes() - expected_op * before).norm(), kTol);
}

TEST(LowBlockMatrix, ControlledApplication) {
  std::mt19937_64 rng(28);
  const RegisterLayout layout(1, 0, 1, 1);
  const oracle::Matrix m = oracle::kron(oracle::pauli('Y'), oracle::pauli('X'));
  StateVector s = random_full_state(layout, rng);
  const auto before = s.amplitudes();
  apply_low_block_matrix(s, m, Control::on(2));
  EXPECT_LT((s.amplitudes().head(4) - before.head(4)).norm(), kTol);
  EXPECT_LT((s.amplitudes().tail(4) - m * before.tail(4)).norm(), kTol);
  EXPECT_THROW(apply_low_block_matrix(s, oracle::Matrix::Identity(3, 3)),
               DimensionError);
  EXPECT_THROW(apply_low_block_matrix(s, m, Control::on(0)), ConfigurationError);
}

TEST(SystemSlice, ReturnsAllZeroSector) {
  std::mt19937_64 rng(29);
  const RegisterLayout layout(1, 1, 1, 2);
  const StateVector s = random_full_state(layout, rng);
  EXPECT_LT((system_slice(s) - s.amplitudes().head(4)).norm(), 0.0 + 1e-300);
}

// ---------------------------------------------------------------------------
// Dumps and scalar genericity
// ---------------------------------------------------------------------------

TEST(StateDump, RoundTripAndHeader) {
  std::mt19937_64 rng(30);
  const RegisterLayout layout(1, 0, 1, 2);
  const StateVector s = random_full_state(layout, rng);
  const auto path = std::filesystem::temp_directory_path() / "lcupea_dump_test.bin";
  write_state_dump(path, s);

  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  ASSERT_EQ(bytes.size(), 16u + 16u * s.dimension());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8),
            std::string("LCUPEA\0\0", 8));
  EXPECT_EQ(bytes[8], 4);  // qubit count, little-endian u16
  EXPECT_EQ(bytes[9], 0);
  for (int b = 10; b < 16; ++b) EXPECT_EQ(bytes[b], 0);

  const StateDump d = read_state_dump(path);
  EXPECT_EQ(d.qubits, 4);
  EXPECT_EQ(d.amplitudes, s.amplitudes());
  std::filesystem::remove(path);
}

TEST(FloatInstantiation, KernelsCompileAndAgreeWithDouble) {
  std::mt19937_64 rng(31);
  const RegisterLayout layout(1, 0, 1, 3);
  const auto psi = oracle::random_state(8, rng);
  StateVector d = prepare(layout, psi);
  BasicStateVector<float> f = prepare<float>(layout, psi);
  auto run = [](auto& s) {
    const int pq = s.layout().phase_qubit();
    apply_hadamard(s, pq);
    apply_pauli_term(s, PauliTerm{Complex(0, 1), PauliString::from_word("XYZ")},
                     Control::on(pq));
    reflect_about_zero(s, s.layout().ancilla_mask());
    apply_phase_rotation(s, pq, 0.4);
    apply_hadamard(s, pq);
    project_ancilla_zero(s);
  };
  run(d);
  run(f);
  EXPECT_LT((f.amplitudes().cast<Complex>() - d.amplitudes()).norm(), 1e-6);
}

}  // namespace
}  // namespace lcupea
