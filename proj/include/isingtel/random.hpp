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

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "isingtel/algebra.hpp"
#include "isingtel/ising.hpp"

namespace isingtel {

/// Seeded generator whose draws do not depend on the standard library's
/// distribution implementations, so seeded reports are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-random pure state on n qubits.
inline StateVector random_state(int n_qubits, Rng& rng) {
  ComplexVector v(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return StateVector(n_qubits, v / v.norm());
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal pushed into Q.
inline ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = rmat(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

/// Hermitian matrix with standard-normal entries (GUE up to scaling).
inline ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  }
  return 0.5 * (g + g.adjoint());
}

/// Couplings and both fields along h drawn uniformly from [-scale, scale].
inline CouplingConfig random_coupling(int h, Rng& rng, double scale = 5.0) {
  Vec3 J{};
  for (auto& v : J) v = rng.uniform(-scale, scale);
  const double b1 = rng.uniform(-scale, scale);
  return CouplingConfig::along(h, J, b1, rng.uniform(-scale, scale));
}

}  // namespace isingtel
