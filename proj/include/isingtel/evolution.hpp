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

// Closed-form Bell-basis evolution operators U_h(t) and their 2x2 block
// structure.
//
// Each U_h(t) splits into two 2x2 blocks on fixed pairs of Bell states:
//
//   s_{h,j} = e^{i D+_alpha} [[ (e^beta_alpha)^*,   -q i^h d_alpha ],
//                             [ q (i^*)^h d_alpha,  e^beta_alpha   ]]
//
// with alpha = (-1)^{h+j+1}, beta = (-1)^{j(h+l-k+1)}, q = beta (-1)^{h+1}.
// The closed form is assembled from a literal per-direction template; the
// oracle conjugates the dense exponential of the Hamiltonian into the Bell
// basis. The two agree with U_h(t) = exp(+i H_h t).

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "isingtel/algebra.hpp"
#include "isingtel/errors.hpp"
#include "isingtel/ising.hpp"

namespace isingtel {

/// The closed forms equal exp_hermitian(H, kClosedFormTimeSign * t), i.e.
/// exp(+i H t). Settled by comparing both conventions against the oracle.
inline constexpr double kClosedFormTimeSign = -1.0;

inline constexpr double kConstructionTolerance = 1e-12;
inline constexpr double kCrossValidationTolerance = 1e-10;
inline constexpr double kStructuralTolerance = 1e-10;

enum class Provenance { closed_form, oracle, composed };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::oracle: return "oracle";
    case Provenance::composed: return "composed";
  }
  return "unknown";
}

struct EvolutionOperator {
  int h = 3;
  ComplexMatrix matrix = identity(4);  // Bell ordering
  Provenance provenance = Provenance::closed_form;
  double t = 0.0;
};

/// Bell-ordering rows (1-based) of one 2x2 block.
struct BlockRows {
  int k = 1;
  int l = 2;
  friend bool operator==(const BlockRows&, const BlockRows&) = default;
};

inline std::array<BlockRows, 2> block_pattern(int h) {
  require_direction(h);
  switch (h) {
    case 1: return {{{1, 2}, {3, 4}}};
    case 2: return {{{1, 4}, {2, 3}}};
    default: return {{{1, 3}, {2, 4}}};
  }
}

/// alpha, beta, q of block j (1 or 2) for direction h.
struct BlockSigns {
  int alpha = 1;
  int beta = 1;
  int q = 1;
};

inline BlockSigns block_signs(int h, int j) {
  require_direction(h);
  if (j != 1 && j != 2) throw InputError("block label j must be 1 or 2");
  const BlockRows rows = block_pattern(h)[static_cast<std::size_t>(j - 1)];
  auto parity = [](int e) { return (e % 2 == 0) ? 1 : -1; };
  BlockSigns s;
  s.alpha = parity(h + j + 1);
  s.beta = parity(j * (h + rows.l - rows.k + 1));
  s.q = s.beta * parity(h + 1);
  return s;
}

namespace detail {

enum class Cell { diag_conj, diag, off };

// One nonzero entry of U_h(t): cell(row, col) = factor * e^{i D+_alpha} * X
// where X is (e^beta_alpha)^*, e^beta_alpha or d_alpha.
struct TemplateEntry {
  int row;  // 1-based
  int col;
  Cell cell;
  int alpha;
  int beta;
  Complex factor;
};

using Template = std::array<TemplateEntry, 8>;

// Transcribed from the printed matrices. In U_1 the (1,1) and (3,3) cells are
// e^{i D+} (e)^*, the general block form; conjugating the phase as well makes
// the block non-unitary.
inline const Template& closed_form_template(int h) {
  static const Template u1{{
      {1, 1, Cell::diag_conj, -1, -1, {1, 0}},
      {1, 2, Cell::off, -1, -1, {0, 1}},
      {2, 1, Cell::off, -1, -1, {0, 1}},
      {2, 2, Cell::diag, -1, -1, {1, 0}},
      {3, 3, Cell::diag_conj, +1, +1, {1, 0}},
      {3, 4, Cell::off, +1, +1, {0, -1}},
      {4, 3, Cell::off, +1, +1, {0, -1}},
      {4, 4, Cell::diag, +1, +1, {1, 0}},
  }};
  static const Template u2{{
      {1, 1, Cell::diag_conj, +1, +1, {1, 0}},
      {1, 4, Cell::off, +1, +1, {-1, 0}},
      {4, 1, Cell::off, +1, +1, {1, 0}},
      {4, 4, Cell::diag, +1, +1, {1, 0}},
      {2, 2, Cell::diag_conj, -1, +1, {1, 0}},
      {2, 3, Cell::off, -1, +1, {-1, 0}},
      {3, 2, Cell::off, -1, +1, {1, 0}},
      {3, 3, Cell::diag, -1, +1, {1, 0}},
  }};
  static const Template u3{{
      {1, 1, Cell::diag_conj, -1, +1, {1, 0}},
      {1, 3, Cell::off, -1, +1, {0, 1}},
      {3, 1, Cell::off, -1, +1, {0, 1}},
      {3, 3, Cell::diag, -1, +1, {1, 0}},
      {2, 2, Cell::diag_conj, +1, +1, {1, 0}},
      {2, 4, Cell::off, +1, +1, {0, 1}},
      {4, 2, Cell::off, +1, +1, {0, 1}},
      {4, 4, Cell::diag, +1, +1, {1, 0}},
  }};
  require_direction(h);
  return h == 1 ? u1 : (h == 2 ? u2 : u3);
}

}  // namespace detail

inline EvolutionOperator evolution_closed_form(const CouplingConfig& cfg, double t) {
  const ReducedQuantities rq = reduced_quantities(cfg, t);
  EvolutionOperator op;
  op.h = cfg.h;
  op.t = t;
  op.provenance = Provenance::closed_form;
  op.matrix = ComplexMatrix::Zero(4, 4);
  for (const auto& cell : detail::closed_form_template(cfg.h)) {
    const Complex phase = std::exp(Complex(0.0, rq.delta(cell.alpha, +1)));
    Complex x;
    switch (cell.cell) {
      case detail::Cell::diag_conj: x = std::conj(rq.e_of(cell.alpha, cell.beta)); break;
      case detail::Cell::diag: x = rq.e_of(cell.alpha, cell.beta); break;
      case detail::Cell::off: x = rq.d_of(cell.alpha); break;
    }
    op.matrix(cell.row - 1, cell.col - 1) = cell.factor * phase * x;
  }
  return op;
}

inline EvolutionOperator evolution_oracle(const CouplingConfig& cfg, double t) {
  EvolutionOperator op;
  op.h = cfg.h;
  op.t = t;
  op.provenance = Provenance::oracle;
  op.matrix = conjugate_to_bell(exp_hermitian(hamiltonian_matrix(cfg), kClosedFormTimeSign * t));
  return op;
}

/// Largest modulus among the entries outside both blocks of direction h.
inline double off_pattern_magnitude(int h, const ComplexMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw DimensionError("expected a 4x4 operator");
  std::array<int, 4> owner{};
  const auto pattern = block_pattern(h);
  for (std::size_t b = 0; b < 2; ++b) {
    owner[static_cast<std::size_t>(pattern[b].k - 1)] = static_cast<int>(b);
    owner[static_cast<std::size_t>(pattern[b].l - 1)] = static_cast<int>(b);
  }
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (owner[static_cast<std::size_t>(r)] != owner[static_cast<std::size_t>(c)]) {
        worst = std::max(worst, std::abs(u(r, c)));
      }
    }
  }
  return worst;
}

struct BlockPair {
  int j = 1;
  BlockRows rows;
  int alpha = 1;
  int beta = 1;
  int q = 1;
  Eigen::Matrix2cd block = Eigen::Matrix2cd::Identity();
};

/// Deviation of a 2x2 block from the shape omega * [[a^*, -q i^h r], [q (i^*)^h r, a]]
/// with r real and omega^2 = det. Zero (to rounding) for every block of U_h(t).
inline double block_shape_defect(int h, int q, const Eigen::Matrix2cd& m) {
  const Complex det = m.determinant();
  const double unit_defect = std::abs(std::abs(det) - 1.0);
  const Complex omega = std::sqrt(det);
  if (std::abs(omega) == 0.0) return std::numeric_limits<double>::infinity();
  const Eigen::Matrix2cd n = m / omega;
  Complex ih(1.0, 0.0);
  for (int k = 0; k < h; ++k) ih *= kI;
  const Complex upper = -static_cast<double>(q) * ih;
  const Complex lower = static_cast<double>(q) * std::conj(ih);
  const Complex r_upper = n(0, 1) / upper;
  const Complex r_lower = n(1, 0) / lower;
  double defect = unit_defect;
  defect = std::max(defect, std::abs(n(1, 1) - std::conj(n(0, 0))));
  defect = std::max(defect, std::abs(r_upper.imag()));
  defect = std::max(defect, std::abs(r_lower.imag()));
  defect = std::max(defect, std::abs(r_upper - r_lower));
  return defect;
}

inline std::pair<BlockPair, BlockPair> extract_blocks(const EvolutionOperator& u,
                                                      double tol = kStructuralTolerance) {
  if (off_pattern_magnitude(u.h, u.matrix) >= tol) {
    throw PatternViolation("extract_blocks: operator has entries outside the S*_" +
                           std::to_string(u.h) + " block pattern");
  }
  const auto pattern = block_pattern(u.h);
  std::array<BlockPair, 2> out;
  for (int j = 1; j <= 2; ++j) {
    BlockPair& bp = out[static_cast<std::size_t>(j - 1)];
    const BlockSigns signs = block_signs(u.h, j);
    bp.j = j;
    bp.rows = pattern[static_cast<std::size_t>(j - 1)];
    bp.alpha = signs.alpha;
    bp.beta = signs.beta;
    bp.q = signs.q;
    const int k = bp.rows.k - 1;
    const int l = bp.rows.l - 1;
    bp.block << u.matrix(k, k), u.matrix(k, l), u.matrix(l, k), u.matrix(l, l);
  }
  return {out[0], out[1]};
}

/// Pattern + block-shape membership test for S*_h.
inline bool in_subgroup(int h, const ComplexMatrix& u, double tol = kStructuralTolerance) {
  if (off_pattern_magnitude(h, u) >= tol) return false;
  EvolutionOperator op{h, u, Provenance::composed, 0.0};
  const auto [b1, b2] = extract_blocks(op, tol);
  return block_shape_defect(h, b1.q, b1.block) < tol &&
         block_shape_defect(h, b2.q, b2.block) < tol;
}

/// Whether U*V stays in S*_h. Operators of different directions are rejected.
inline bool subgroup_closure_check(const EvolutionOperator& u, const EvolutionOperator& v,
                                   double tol = kStructuralTolerance) {
  if (u.h != v.h) {
    throw InputError("subgroup_closure_check: direction mismatch (" + std::to_string(u.h) +
                     " vs " + std::to_string(v.h) + ")");
  }
  return in_subgroup(u.h, u.matrix * v.matrix, tol);
}

/// U(t2) * U(t1): the second operator acts last.
inline EvolutionOperator compose(const EvolutionOperator& later, const EvolutionOperator& earlier) {
  if (later.h != earlier.h) throw InputError("compose: direction mismatch");
  return {later.h, later.matrix * earlier.matrix, Provenance::composed, later.t + earlier.t};
}

}  // namespace isingtel
