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

#include <algorithm>
#include <cmath>

#include "isingtel/ising.hpp"
#include "isingtel/random.hpp"

namespace isingtel {
namespace {

TEST(Hamiltonian, ZeroConfigIsZero) {
  EXPECT_EQ(hamiltonian_matrix(CouplingConfig{}), ComplexMatrix::Zero(4, 4));
}

TEST(Hamiltonian, PureZZCoupling) {
  const CouplingConfig cfg = CouplingConfig::along(3, {0.0, 0.0, 1.0}, 0.0, 0.0);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << -1.0, 1.0, 1.0, -1.0;
  EXPECT_EQ(hamiltonian_matrix(cfg), expected);
}

TEST(Hamiltonian, HermitianAndTraceless) {
  const CouplingConfig cfg = CouplingConfig::along(3, {1.0, 2.0, 3.0}, 1.0, 0.5);
  const ComplexMatrix h = hamiltonian_matrix(cfg);
  EXPECT_EQ((h - h.adjoint()).norm(), 0.0);
  EXPECT_EQ(h.trace(), Complex(0.0, 0.0));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix r = hamiltonian_matrix(random_coupling(1 + k % 3, rng));
    EXPECT_LT(hermiticity_defect(r), 1e-15);
    EXPECT_LT(std::abs(r.trace()), 1e-14);
  }
}

TEST(CouplingConfig, RejectsOffAxisField) {
  CouplingConfig cfg = CouplingConfig::along(3, {1.0, 2.0, 3.0}, 1.0, 0.5);
  cfg.B1[0] = 0.1;
  EXPECT_THROW(validate(cfg), InvalidConfig);
  cfg = CouplingConfig::along(2, {1.0, 2.0, 3.0}, 1.0, 0.5);
  cfg.J[1] = std::nan("");
  EXPECT_THROW(validate(cfg), InvalidConfig);
  cfg.h = 4;
  EXPECT_THROW(validate(cfg), InputError);
}

TEST(ScaledParams, ZeroFieldLimit) {
  const ScaledParams p = scaled_params(CouplingConfig::along(3, {1.0, 2.0, 0.0}, 0.0, 0.0));
  // R_+ = |J_{{3}-}| = |1 - 2| = 1, j_+ = -1, b_+ = 0
  EXPECT_DOUBLE_EQ(p.radius(+1), 1.0);
  EXPECT_DOUBLE_EQ(*p.j[sign_slot(+1)], -1.0);
  EXPECT_DOUBLE_EQ(*p.b[sign_slot(+1)], 0.0);
}

TEST(ScaledParams, DirectionOnePairsTwoAndThree) {
  const ScaledParams p = scaled_params(CouplingConfig::along(1, {0.5, 2.0, 3.0}, 0.0, 0.0));
  EXPECT_DOUBLE_EQ(p.coupling(+1), 5.0);
  EXPECT_DOUBLE_EQ(p.coupling(-1), -1.0);
  EXPECT_DOUBLE_EQ(p.Jh, 0.5);
}

TEST(ScaledParams, UnitCircleProperty) {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const ScaledParams p = scaled_params(random_coupling(1 + k % 3, rng));
    for (int s : kSigns) {
      ASSERT_FALSE(p.degenerate(s));
      const double b = *p.b[sign_slot(s)];
      const double j = *p.j[sign_slot(s)];
      EXPECT_NEAR(b * b + j * j, 1.0, 1e-12);
      EXPECT_GE(p.radius(s), 0.0);
    }
  }
}

TEST(ScaledParams, DegenerateRadiusIsUndefined) {
  const ScaledParams p = scaled_params(CouplingConfig::along(3, {1.0, 1.0, 2.0}, 0.3, 0.3));
  // B_- = 0 and J_{{3}+} = 2 so R_- = 2; B_+ = 0.6, J_{{3}-} = 0 so R_+ = 0.6.
  EXPECT_FALSE(p.degenerate(-1));
  const ScaledParams q = scaled_params(CouplingConfig::along(3, {1.0, 1.0, 2.0}, 0.0, 0.0));
  EXPECT_TRUE(q.degenerate(+1));
  EXPECT_EQ(q.b_or_zero(+1), 0.0);
}

TEST(Eigenvalues, ZeroConfig) {
  for (double e : eigenvalues(CouplingConfig{})) EXPECT_EQ(e, 0.0);
}

TEST(Eigenvalues, WorkedCase) {
  const auto e = eigenvalues(CouplingConfig::along(3, {1.0, 2.0, 3.0}, 1.0, 0.5));
  EXPECT_NEAR(e[1], -3.0 + std::sqrt(1.5 * 1.5 + 1.0), 1e-15);
  const Eigen::VectorXd dense =
      hermitian_eigenvalues(hamiltonian_matrix(CouplingConfig::along(3, {1.0, 2.0, 3.0}, 1.0, 0.5)));
  std::array<double, 4> sorted = e;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(sorted[static_cast<std::size_t>(i)], dense(i), 1e-12);
}

TEST(Eigenvalues, MatchDenseSolver) {
  Rng rng(3);
  for (int h = 1; h <= 3; ++h) {
    for (int k = 0; k < 1000; ++k) {
      const CouplingConfig cfg = random_coupling(h, rng);
      std::array<double, 4> e = eigenvalues(cfg);
      std::sort(e.begin(), e.end());
      const Eigen::VectorXd dense = hermitian_eigenvalues(hamiltonian_matrix(cfg));
      for (int i = 0; i < 4; ++i) ASSERT_NEAR(e[static_cast<std::size_t>(i)], dense(i), 1e-12);
    }
  }
}

TEST(Eigenvalues, FieldSwapWithQubitExchange) {
  Rng rng(4);
  const ComplexMatrix swap = [] {
    ComplexMatrix s = ComplexMatrix::Zero(4, 4);
    s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
    return s;
  }();
  for (int k = 0; k < 100; ++k) {
    const CouplingConfig cfg = random_coupling(1 + k % 3, rng);
    CouplingConfig swapped = cfg;
    std::swap(swapped.B1, swapped.B2);
    EXPECT_DOUBLE_EQ(scaled_params(swapped).field(-1), -scaled_params(cfg).field(-1));
    EXPECT_DOUBLE_EQ(scaled_params(swapped).field(+1), scaled_params(cfg).field(+1));
    EXPECT_LT((swap * hamiltonian_matrix(cfg) * swap - hamiltonian_matrix(swapped)).norm(), 1e-14);
    std::array<double, 4> a = eigenvalues(cfg), b = eigenvalues(swapped);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(ReducedQuantities, TimeZero) {
  const ReducedQuantities rq = reduced_quantities(CouplingConfig::along(2, {1.0, 2.0, 3.0}, 0.4, 0.1), 0.0);
  for (int a : kSigns) {
    EXPECT_EQ(rq.d_of(a), 0.0);
    for (int b : kSigns) EXPECT_EQ(rq.e_of(a, b), Complex(1.0, 0.0));
    EXPECT_EQ(rq.delta(a, +1), 0.0);
    EXPECT_EQ(rq.delta(a, -1), 0.0);
  }
}

TEST(ReducedQuantities, PlusPhaseIsJhTimesT) {
  const ReducedQuantities rq = reduced_quantities(CouplingConfig::along(1, {1.25, 2.0, 3.0}, 0.4, 0.1), 0.8);
  EXPECT_EQ(rq.delta(+1, +1), 1.25 * 0.8);
  EXPECT_EQ(rq.delta(-1, +1), -1.25 * 0.8);
}

TEST(ReducedQuantities, ColumnsNormalized) {
  Rng rng(5);
  for (int k = 0; k < 1000; ++k) {
    const ReducedQuantities rq = reduced_quantities(random_coupling(1 + k % 3, rng), rng.uniform(-5, 5));
    for (int a : kSigns) {
      for (int b : kSigns) EXPECT_NEAR(std::norm(rq.e_of(a, b)) + rq.d_of(a) * rq.d_of(a), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace isingtel
