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

// Dense complex linear algebra for a handful of qubits: tensor products, the
// computational <-> Bell change of basis, a Hermitian exponential computed
// by eigendecomposition, and the comparison metrics used everywhere else.
//
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
// computational-basis index (|q0 q1 ... q_{n-1}>).

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "isingtel/errors.hpp"

namespace isingtel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Default tolerance for Frobenius-norm comparisons.
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr int kMaxQubits = 12;

namespace detail {

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        return false;
      }
    }
  }
  return true;
}

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
  }
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
}

}  // namespace detail

/// A pure state of n qubits, 1 <= n <= kMaxQubits.
class StateVector {
 public:
  StateVector(int n_qubits, ComplexVector amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits_ < 1 || n_qubits_ > kMaxQubits) {
      throw DimensionError("StateVector: qubit count must lie in [1, 12]");
    }
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits_)) {
      throw DimensionError("StateVector: expected 2^n amplitudes");
    }
    if (!detail::all_finite(amplitudes_)) {
      throw InputError("StateVector: non-finite amplitude");
    }
  }

  /// Computational basis state |index> on n qubits.
  static StateVector basis(int n_qubits, std::uint64_t index) {
    if (n_qubits < 1 || n_qubits > kMaxQubits || index >= (std::uint64_t{1} << n_qubits)) {
      throw DimensionError("StateVector::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return {n_qubits, std::move(v)};
  }

  /// Infers the qubit count from the amplitude count.
  static StateVector from_amplitudes(ComplexVector amplitudes) {
    const auto size = amplitudes.size();
    int n = 0;
    while ((Eigen::Index{1} << n) < size) ++n;
    if ((Eigen::Index{1} << n) != size || n == 0) {
      throw DimensionError("StateVector: amplitude count must be a power of two >= 2");
    }
    return {n, std::move(amplitudes)};
  }

  int qubit_count() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
  double norm() const { return amplitudes_.norm(); }

  StateVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw InputError("StateVector: cannot normalize the zero vector");
    return {n_qubits_, amplitudes_ / n};
  }

 private:
  int n_qubits_;
  ComplexVector amplitudes_;
};

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

/// Pauli matrix sigma_k for k = 1, 2, 3 (x, y, z); sigma_0 is I2.
inline ComplexMatrix pauli(int k) {
  ComplexMatrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw InputError("pauli: index must be 0..3");
  }
  return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  return {a.qubit_count() + b.qubit_count(), kron(a.amplitudes(), b.amplitudes())};
}

/// A Bell label (A, B) in {0,1}^2; the sign-style names are
/// beta_{--}=beta_00, beta_{-+}=beta_01, beta_{+-}=beta_10, beta_{++}=beta_11.
struct BellLabel {
  int first = 0;
  int second = 0;

  /// Position in the fixed Bell ordering (--, -+, +-, ++).
  int index() const { return 2 * first + second; }
  static BellLabel from_index(int i) {
    if (i < 0 || i > 3) throw InputError("BellLabel: index must be 0..3");
    return {i / 2, i % 2};
  }
  std::string name() const { return std::to_string(first) + std::to_string(second); }
  /// Sign-script name, e.g. "-+" for beta_01.
  std::string sign_name() const {
    return std::string(first ? "+" : "-") + (second ? "+" : "-");
  }
  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

inline void validate(const BellLabel& label) {
  if ((label.first != 0 && label.first != 1) || (label.second != 0 && label.second != 1)) {
    throw InputError("BellLabel: entries must be 0 or 1");
  }
}

/// beta_{AB} = (|0 B> + (-1)^A |1 (1-B)>) / sqrt(2) in computational ordering.
inline ComplexVector bell_state(BellLabel label) {
  validate(label);
  ComplexVector v = ComplexVector::Zero(4);
  v(label.second) = kInvSqrt2;
  v(2 + (1 - label.second)) = (label.first ? -1.0 : 1.0) * kInvSqrt2;
  return v;
}

/// Columns are the Bell states in the order --, -+, +-, ++.
inline ComplexMatrix bell_change_of_basis() {
  ComplexMatrix p(4, 4);
  for (int i = 0; i < 4; ++i) p.col(i) = bell_state(BellLabel::from_index(i));
  return p;
}

/// Computational-basis operator -> Bell-basis matrix (P^dag U P).
inline ComplexMatrix conjugate_to_bell(const ComplexMatrix& u_comp) {
  if (u_comp.rows() != 4 || u_comp.cols() != 4) {
    throw DimensionError("conjugate_to_bell: expected a 4x4 operator");
  }
  const ComplexMatrix p = bell_change_of_basis();
  return p.adjoint() * u_comp * p;
}

/// Bell-basis matrix -> computational-basis operator (P U P^dag).
inline ComplexMatrix conjugate_from_bell(const ComplexMatrix& u_bell) {
  if (u_bell.rows() != 4 || u_bell.cols() != 4) {
    throw DimensionError("conjugate_from_bell: expected a 4x4 operator");
  }
  const ComplexMatrix p = bell_change_of_basis();
  return p * u_bell * p.adjoint();
}

inline double hermiticity_defect(const ComplexMatrix& h) {
  return (h - h.adjoint()).norm();
}

/// ||U^dag U - I||_F.
inline double unitarity_defect(const ComplexMatrix& u) {
  detail::require_square(u, "unitarity_defect");
  return (u.adjoint() * u - identity(u.rows())).norm();
}

/// exp(-i H t) for Hermitian H, via a dense self-adjoint eigensolver.
inline ComplexMatrix exp_hermitian(const ComplexMatrix& h, double t) {
  detail::require_square(h, "exp_hermitian");
  if (!detail::all_finite(h) || !std::isfinite(t)) {
    throw InputError("exp_hermitian: non-finite input");
  }
  const double scale = std::max(1.0, h.norm());
  if (hermiticity_defect(h) > 1e-12 * scale) {
    throw InputError("exp_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exp_hermitian: eigensolver failed");
  }
  const auto& vals = solver.eigenvalues();
  ComplexVector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -vals(i) * t));
  }
  const ComplexMatrix& vecs = solver.eigenvectors();
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

/// Ascending eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h) {
  detail::require_square(h, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// min over phi of ||U - e^{i phi} V||_F, which equals sqrt(2d - 2|tr(U^dag V)|)
/// for unitaries of dimension d. Evaluated at the optimal phase directly, since
/// the trace form cancels catastrophically near zero.
inline double global_phase_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  detail::require_same_shape(u, v, "global_phase_distance");
  const Complex overlap = (v.adjoint() * u).trace();
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
  return (u - phase * v).norm();
}

/// Vector analogue of global_phase_distance.
inline double phase_insensitive_distance(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("phase_insensitive_distance: size mismatch");
  const Complex overlap = b.dot(a);
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
  return (a - phase * b).norm();
}

/// Applies U to the listed qubits; targets[0] is U's most significant factor.
inline StateVector apply_gate(const StateVector& state, const ComplexMatrix& u,
                              const std::vector<int>& targets) {
  const int n = state.qubit_count();
  const int k = static_cast<int>(targets.size());
  if (k == 0) throw DimensionError("apply_gate: no targets");
  if (u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows()) {
    throw DimensionError("apply_gate: gate dimension must be 2^|targets|");
  }
  std::uint64_t target_mask = 0;
  std::vector<std::uint64_t> bit(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    const int q = targets[static_cast<std::size_t>(t)];
    if (q < 0 || q >= n) throw DimensionError("apply_gate: qubit index out of range");
    const std::uint64_t b = std::uint64_t{1} << (n - 1 - q);
    if (target_mask & b) throw DimensionError("apply_gate: duplicate target");
    target_mask |= b;
    bit[static_cast<std::size_t>(t)] = b;
  }

  const std::uint64_t sub_dim = std::uint64_t{1} << k;
  std::vector<std::uint64_t> offset(sub_dim, 0);
  for (std::uint64_t local = 0; local < sub_dim; ++local) {
    for (int t = 0; t < k; ++t) {
      if (local & (std::uint64_t{1} << (k - 1 - t))) offset[local] |= bit[static_cast<std::size_t>(t)];
    }
  }

  const ComplexVector& in = state.amplitudes();
  ComplexVector out(in.size());
  ComplexVector gathered(static_cast<Eigen::Index>(sub_dim));
  const std::uint64_t full = static_cast<std::uint64_t>(in.size());
  for (std::uint64_t base = 0; base < full; ++base) {
    if (base & target_mask) continue;
    for (std::uint64_t l = 0; l < sub_dim; ++l) {
      gathered(static_cast<Eigen::Index>(l)) = in(static_cast<Eigen::Index>(base | offset[l]));
    }
    const ComplexVector mixed = u * gathered;
    for (std::uint64_t l = 0; l < sub_dim; ++l) {
      out(static_cast<Eigen::Index>(base | offset[l])) = mixed(static_cast<Eigen::Index>(l));
    }
  }
  return {n, std::move(out)};
}

/// |<a|b>|^2.
inline double fidelity(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count()) throw DimensionError("fidelity: qubit count mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace isingtel
