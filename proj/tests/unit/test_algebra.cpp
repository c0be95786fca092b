// Copyright 2026 The isingtel Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "isingtel/algebra.hpp"
#include "isingtel/ising.hpp"
#include "isingtel/random.hpp"
#include "test_support.hpp"

namespace isingtel {
namespace {

using testing::embed;
using testing::taylor_exp;

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
}

TEST(Kron, SigmaXSigmaXIsAntidiagonal) {
  const ComplexMatrix m = kron(pauli(1), pauli(1));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) EXPECT_EQ(m(r, c), Complex(r + c == 3 ? 1.0 : 0.0, 0.0));
  }
}

TEST(Kron, SigmaZSigmaZIsDiagonal) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
  EXPECT_EQ(kron(pauli(3), pauli(3)), expected);
}

TEST(Pauli, RejectsOutOfRange) { EXPECT_THROW(pauli(4), InputError); }

TEST(StateVector, RejectsBadShapes) {
  EXPECT_THROW(StateVector(2, ComplexVector::Zero(3)), DimensionError);
  EXPECT_THROW(StateVector(13, ComplexVector::Zero(2)), DimensionError);
  ComplexVector v(2);
  v << std::nan(""), 0.0;
  EXPECT_THROW(StateVector(1, v), InputError);
}

TEST(StateVector, RandomStatesAreNormalized) {
  Rng rng(11);
  for (int n = 1; n <= 6; ++n) EXPECT_NEAR(random_state(n, rng).norm(), 1.0, 1e-12);
}

TEST(Bell, FirstColumnIsBetaZeroZero) {
  const ComplexMatrix p = bell_change_of_basis();
  EXPECT_NEAR(std::abs(p(0, 0) - kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p(3, 0) - kInvSqrt2), 0.0, 1e-15);
}

TEST(Bell, ChangeOfBasisIsUnitary) {
  const ComplexMatrix p = bell_change_of_basis();
  EXPECT_LT((p.adjoint() * p - identity(4)).norm(), 1e-15);
  EXPECT_LT((p.inverse() - p.adjoint()).norm(), 1e-15);
}

TEST(Bell, LabelsFollowStandardStates) {
  const double s = kInvSqrt2;
  ComplexVector b01(4), b10(4), b11(4);
  b01 << 0, s, s, 0;
  b10 << s, 0, 0, -s;
  b11 << 0, s, -s, 0;
  EXPECT_LT((bell_state({0, 1}) - b01).norm(), 1e-15);
  EXPECT_LT((bell_state({1, 0}) - b10).norm(), 1e-15);
  EXPECT_LT((bell_state({1, 1}) - b11).norm(), 1e-15);
  EXPECT_EQ(BellLabel({0, 1}).sign_name(), "-+");
}

TEST(Bell, FirstBellVectorMapsToBetaZeroZero) {
  ComplexVector e0 = ComplexVector::Zero(4);
  e0(0) = 1.0;
  EXPECT_LT((bell_change_of_basis() * e0 - bell_state({0, 0})).norm(), 1e-15);
}

TEST(Conjugation, IdentityIsFixed) {
  EXPECT_LT((conjugate_to_bell(identity(4)) - identity(4)).norm(), 1e-15);
}

TEST(Conjugation, SigmaZSigmaZIsDiagonalSigns) {
  const ComplexMatrix m = conjugate_to_bell(kron(pauli(3), pauli(3)));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, -1.0, 1.0, -1.0;
  EXPECT_LT((m - expected).norm(), 1e-15);
}

TEST(Conjugation, RoundTrip) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix u = random_unitary(4, rng);
    EXPECT_LT((conjugate_from_bell(conjugate_to_bell(u)) - u).norm(), 1e-14);
  }
}

TEST(Conjugation, RejectsWrongShape) { EXPECT_THROW(conjugate_to_bell(identity(2)), DimensionError); }

TEST(ExpHermitian, ZeroGeneratorGivesIdentity) {
  EXPECT_LT((exp_hermitian(ComplexMatrix::Zero(4, 4), 3.2) - identity(4)).norm(), 1e-15);
}

TEST(ExpHermitian, SigmaZAtPiIsMinusIdentity) {
  EXPECT_LT((exp_hermitian(pauli(3), std::numbers::pi) + identity(2)).norm(), 1e-14);
}

TEST(ExpHermitian, TabulatedIsingCase) {
  CouplingConfig cfg = CouplingConfig::along(3, {1.0, 2.0, 3.0}, 1.0, 0.5);
  const ComplexMatrix u = exp_hermitian(hamiltonian_matrix(cfg), 0.7);
  ComplexMatrix expected(4, 4);
  const Complex z{0.0, 0.0};
  expected << Complex{0.53079246484240272, 0.66256808848151083}, z, z,
      Complex{0.45616583603745364, 0.26678758858825236},
      z, Complex{0.14701201284791704, 0.52758563804458281},
      Complex{0.72223385093801018, -0.42239688347186771}, z,
      z, Complex{0.72223385093801018, -0.42239688347186755},
      Complex{0.38775662982725367, 0.38678667688729362}, z,
      Complex{0.45616583603745353, 0.26678758858825236}, z, z,
      Complex{-0.83770504326995798, -0.13779467728324646};
  EXPECT_LT((u - expected).norm(), 1e-12);
}

TEST(ExpHermitian, MatchesTaylorOracle) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix h = random_hermitian(4, rng);
    const double t = rng.uniform(-3.0, 3.0);
    EXPECT_LT((exp_hermitian(h, t) - taylor_exp(h, t)).norm(), 1e-11);
  }
}

TEST(ExpHermitian, GroupProperty) {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix h = random_hermitian(4, rng);
    const double t = rng.uniform(-10.0, 10.0);
    const double s = rng.uniform(-10.0, 10.0);
    EXPECT_LT((exp_hermitian(h, t + s) - exp_hermitian(h, t) * exp_hermitian(h, s)).norm(), 1e-11);
  }
}

TEST(ExpHermitian, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(exp_hermitian(m, 1.0), InputError);
}

TEST(GlobalPhaseDistance, Examples) {
  Rng rng(7);
  const ComplexMatrix u = random_unitary(4, rng);
  EXPECT_EQ(global_phase_distance(u, u), 0.0);
  EXPECT_LT(global_phase_distance(u, std::exp(Complex(0.0, std::numbers::pi / 3)) * u), 1e-14);
  EXPECT_NEAR(global_phase_distance(identity(4), kron(pauli(1), identity(2))), 2.0 * std::sqrt(2.0),
              1e-12);
}

TEST(GlobalPhaseDistance, IsPseudometric) {
  Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = random_unitary(4, rng);
    const ComplexMatrix b = random_unitary(4, rng);
    const ComplexMatrix c = random_unitary(4, rng);
    EXPECT_NEAR(global_phase_distance(a, b), global_phase_distance(b, a), 1e-12);
    EXPECT_LE(global_phase_distance(a, c),
              global_phase_distance(a, b) + global_phase_distance(b, c) + 1e-10);
  }
}

TEST(ApplyGate, IdentityLeavesStateUnchanged) {
  const StateVector s = StateVector::basis(3, 0);
  EXPECT_EQ(apply_gate(s, identity(4), {0, 1}).amplitudes(), s.amplitudes());
}

TEST(ApplyGate, FlipOnFirstQubit) {
  const StateVector s = apply_gate(StateVector::basis(2, 0), kron(pauli(1), identity(2)), {0, 1});
  EXPECT_LT((s.amplitudes() - StateVector::basis(2, 2).amplitudes()).norm(), 1e-15);
}

TEST(ApplyGate, MatchesDenseEmbedding) {
  Rng rng(9);
  const std::vector<std::vector<int>> target_sets{{0, 1}, {1, 0}, {0, 2}, {2, 1}};
  for (const auto& targets : target_sets) {
    const StateVector s = random_state(3, rng);
    const ComplexMatrix u = random_unitary(4, rng);
    const StateVector out = apply_gate(s, u, targets);
    EXPECT_LT((out.amplitudes() - embed(u, targets, 3) * s.amplitudes()).norm(), 1e-13);
    EXPECT_LT(std::abs(out.norm() - 1.0), 1e-13);
  }
}

TEST(ApplyGate, RejectsBadTargets) {
  const StateVector s = StateVector::basis(3, 0);
  EXPECT_THROW(apply_gate(s, identity(4), {0, 0}), InputError);
  EXPECT_THROW(apply_gate(s, identity(4), {0, 3}), InputError);
  EXPECT_THROW(apply_gate(s, identity(4), {0}), DimensionError);
}

TEST(Fidelity, Examples) {
  Rng rng(10);
  const StateVector psi = random_state(2, rng);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  EXPECT_EQ(fidelity(StateVector::basis(1, 0), StateVector::basis(1, 1)), 0.0);
  ComplexVector plus(2);
  plus << kInvSqrt2, kInvSqrt2;
  EXPECT_NEAR(fidelity(StateVector::basis(1, 0), StateVector(1, plus)), 0.5, 1e-15);
}

}  // namespace
}  // namespace isingtel
