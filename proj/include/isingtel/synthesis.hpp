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

// Two-pulse synthesis of the controlled gates A_{h,j}^{0,pi/2}.
//
// Two constant-field evolutions U_h(t') U_h(t) along the same direction h
// are combined so that the diagonal block (sign alpha) returns to +I2 and
// the antidiagonal block (sign -alpha) becomes +-sigma_1 or +-i sigma_2.
// With xi = B_alpha / J_{{h},-alpha} on the first pulse and -1/xi on the
// second, both antidiagonal-block rotations are half turns about orthogonal
// axes; chi = B_{-alpha}/J_{{h},alpha} (shared) tunes the diagonal block to a
// whole number of turns. The integer search below enumerates the
// prescriptions, and every candidate is accepted only after the product is
// rebuilt and compared with the literal target matrix.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "isingtel/algebra.hpp"
#include "isingtel/errors.hpp"
#include "isingtel/evolution.hpp"
#include "isingtel/ising.hpp"

namespace isingtel {

inline constexpr double kSynthesisTolerance = 1e-8;

// ---------------------------------------------------------------------------
// Gate library

struct GateTarget {
  int h = 1;
  int j = 2;
  ComplexMatrix matrix = identity(4);  // Bell ordering
};

/// The six A_{h,j}^{0,pi/2} gates, entries exactly as printed.
inline GateTarget gate_library(int h, int j) {
  require_direction(h);
  if (j != 1 && j != 2) throw InputError("gate_library: j must be 1 or 2");
  const Complex i = kI;
  ComplexMatrix m(4, 4);
  if (h == 1 && j == 1) {
    m << 0, 1, 0, 0,
        -1, 0, 0, 0,
         0, 0, 1, 0,
         0, 0, 0, 1;
  } else if (h == 2 && j == 1) {
    m << 0, 0, 0, i,
         0, 1, 0, 0,
         0, 0, 1, 0,
         i, 0, 0, 0;
  } else if (h == 3 && j == 1) {
    m << 1, 0, 0, 0,
         0, 0, 0, 1,
         0, 0, 1, 0,
         0, -1, 0, 0;
  } else if (h == 1 && j == 2) {
    m << 1, 0, 0, 0,
         0, 1, 0, 0,
         0, 0, 0, 1,
         0, 0, -1, 0;
  } else if (h == 2 && j == 2) {
    m << 1, 0, 0, 0,
         0, 0, i, 0,
         0, i, 0, 0,
         0, 0, 0, 1;
  } else {
    m << 0, 0, 1, 0,
         0, 1, 0, 0,
        -1, 0, 0, 0,
         0, 0, 0, 1;
  }
  return {h, j, m};
}

/// Which block of a library gate is antidiagonal, and the exponent s of its
/// (-1)^s i^{h mod 2} sigma_{1 + h mod 2} form, stored as 2s mod 4.
struct TargetStructure {
  int anti_block = 1;  // block label (1 or 2) in block_pattern(h)
  int diag_block = 2;
  int alpha_diag = 1;
  int s_twice = 0;
};

inline TargetStructure analyze_target(const GateTarget& target) {
  const auto pattern = block_pattern(target.h);
  TargetStructure ts;
  int found = 0;
  for (int b = 1; b <= 2; ++b) {
    const BlockRows rows = pattern[static_cast<std::size_t>(b - 1)];
    const Complex diag = target.matrix(rows.k - 1, rows.k - 1);
    if (std::abs(diag) < 0.5) {
      ts.anti_block = b;
      const Complex x = target.matrix(rows.k - 1, rows.l - 1);
      const double quarter_turns = std::arg(x) / (std::numbers::pi / 2.0);
      ts.s_twice = static_cast<int>(((std::lround(quarter_turns) % 4) + 4) % 4);
      ++found;
    }
  }
  if (found != 1) throw InputError("analyze_target: target must have exactly one antidiagonal block");
  ts.diag_block = 3 - ts.anti_block;
  ts.alpha_diag = block_signs(target.h, ts.diag_block).alpha;
  return ts;
}

// ---------------------------------------------------------------------------
// Problem and result types

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(const IntRange& other) const {
    return other.empty() || (lo <= other.lo && other.hi <= hi);
  }
};

/// Inclusive integer search box. n_minus, n_minus_prime are n_{-alpha},
/// n'_{-alpha}; m_plus_n is m_alpha + n_alpha; n_alpha enters chi^2.
struct SearchBounds {
  IntRange n_minus{0, 4};
  IntRange n_minus_prime{0, 4};
  IntRange m_plus_n{-8, 8};
  IntRange n_alpha{-8, 8};

  bool contains(const SearchBounds& o) const {
    return n_minus.contains(o.n_minus) && n_minus_prime.contains(o.n_minus_prime) &&
           m_plus_n.contains(o.m_plus_n) && n_alpha.contains(o.n_alpha);
  }
};

struct SynthesisProblem {
  int h = 1;
  std::optional<int> alpha_diag;  // derived from the target when absent
  Vec3 J{1.0, 2.0, 3.0};          // first-pulse couplings
  Vec3 Jp{1.0, 2.0, 3.0};         // second-pulse couplings
  SearchBounds bounds;
  double tolerance = kSynthesisTolerance;
};

inline double pair_coupling(const Vec3& J, int h, int sign) {
  const auto [i, j] = coupling_pair(h);
  const double a = J[static_cast<std::size_t>(i - 1)];
  const double b = J[static_cast<std::size_t>(j - 1)];
  return sign > 0 ? a + b : a - b;
}

inline int resolve_alpha(const SynthesisProblem& problem, const GateTarget& target) {
  const TargetStructure ts = analyze_target(target);
  if (problem.alpha_diag && *problem.alpha_diag != ts.alpha_diag) {
    throw InputError("SynthesisProblem: alpha_diag " + std::to_string(*problem.alpha_diag) +
                     " does not match the target's diagonal block sign " +
                     std::to_string(ts.alpha_diag));
  }
  return ts.alpha_diag;
}

inline void validate(const SynthesisProblem& problem, const GateTarget& target) {
  require_direction(problem.h);
  if (target.h != problem.h) throw InputError("SynthesisProblem: target direction differs from h");
  for (std::size_t k = 0; k < 3; ++k) {
    if (!std::isfinite(problem.J[k]) || !std::isfinite(problem.Jp[k])) {
      throw InputError("SynthesisProblem: non-finite coupling");
    }
  }
  if (!(problem.tolerance > 0.0)) throw InputError("SynthesisProblem: tolerance must be positive");
  const int alpha = resolve_alpha(problem, target);
  if (pair_coupling(problem.J, problem.h, -alpha) == 0.0 ||
      pair_coupling(problem.Jp, problem.h, -alpha) == 0.0) {
    throw InputError("SynthesisProblem: J_{{h},-alpha} and J'_{{h},-alpha} must be nonzero");
  }
}

enum class Rejection {
  zero_phase_integer,
  singular_b,
  no_real_xi,
  odd_m_alpha,
  zero_denominator,
  negative_chi2,
  phase_condition_failed,
  verify_failed,
};

inline const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::zero_phase_integer: return "zero_phase_integer";
    case Rejection::singular_b: return "singular_b";
    case Rejection::no_real_xi: return "no_real_xi";
    case Rejection::odd_m_alpha: return "odd_m_alpha";
    case Rejection::zero_denominator: return "zero_denominator";
    case Rejection::negative_chi2: return "negative_chi2";
    case Rejection::phase_condition_failed: return "phase_condition_failed";
    case Rejection::verify_failed: return "verify_failed";
  }
  return "unknown";
}

struct Pulse {
  CouplingConfig config;
  double duration = 0.0;
};

struct PrescriptionIntegers {
  int n_minus = 0;        // n_{-alpha}
  int n_minus_prime = 0;  // n'_{-alpha}
  int m_alpha = 0;
  int n_alpha = 0;
  double s = 0.0;  // antidiagonal exponent implied by the phase condition (may be half-integer)

  int m_plus_n() const { return m_alpha + n_alpha; }
};

struct PulseSequence {
  int h = 1;
  int alpha = 1;  // sign of the diagonal block
  Pulse first;
  Pulse second;
  double xi = 0.0;
  double chi = 0.0;
  PrescriptionIntegers integers;
  int sign_term = 0;  // sign(q beta b'_{h alpha} j_{h alpha})

  double total_time() const { return first.duration + second.duration; }
};

struct SynthesisReport {
  bool feasible = false;
  std::optional<PulseSequence> sequence;
  double residual = std::numeric_limits<double>::infinity();        // global-phase distance
  double exact_distance = std::numeric_limits<double>::infinity();  // phase-sensitive
  std::uint64_t candidates_examined = 0;
  std::uint64_t verified_candidates = 0;
  std::map<std::string, std::uint64_t> rejections;
  Eigen::Matrix2cd diag_block = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd anti_block = Eigen::Matrix2cd::Zero();

  std::uint64_t rejected_count() const {
    std::uint64_t n = 0;
    for (const auto& [reason, count] : rejections) n += count;
    return n;
  }
};

// ---------------------------------------------------------------------------
// Prescription pieces

struct XiCandidates {
  std::vector<double> values;  // signed, +|xi| before -|xi| for each root
  std::optional<Rejection> reason;
};

/// Real, strictly positive roots of |xi| = (-AB +- sqrt(A^2+B^2-1)) / (B^2-1),
/// each expanded to both signs.
inline XiCandidates candidate_xi(double a, double b) {
  XiCandidates out;
  const double denom = b * b - 1.0;
  if (std::abs(denom) < 1e-14) {
    out.reason = Rejection::singular_b;
    return out;
  }
  const double disc = a * a + b * b - 1.0;
  if (disc < 0.0) {
    out.reason = Rejection::no_real_xi;
    return out;
  }
  const double root = std::sqrt(disc);
  std::vector<double> mags;
  for (double pm : {+1.0, -1.0}) {
    const double mag = (-a * b + pm * root) / denom;
    if (mag > 0.0 && std::isfinite(mag) &&
        std::none_of(mags.begin(), mags.end(), [&](double m) { return m == mag; })) {
      mags.push_back(mag);
    }
  }
  for (double m : mags) {
    out.values.push_back(m);
    out.values.push_back(-m);
  }
  if (out.values.empty()) out.reason = Rejection::no_real_xi;
  return out;
}

struct ChiCandidate {
  std::optional<double> magnitude;  // sqrt(chi^2)
  double chi2 = 0.0;
  std::optional<Rejection> reason;
};

/// chi^2 = (2 n_alpha sqrt(xi^2+1) / (S (2n+1) + P S' (2n'+1)|xi|))^2 - 1.
inline ChiCandidate candidate_chi(double xi, const PrescriptionIntegers& ints, double s_alpha,
                                  double s_alpha_prime, int p_alpha) {
  ChiCandidate out;
  const double axi = std::abs(xi);
  const double den = s_alpha * (2 * ints.n_minus + 1) +
                     p_alpha * s_alpha_prime * (2 * ints.n_minus_prime + 1) * axi;
  if (std::abs(den) < 1e-14) {
    out.reason = Rejection::zero_denominator;
    return out;
  }
  const double ratio = 2.0 * ints.n_alpha * std::sqrt(xi * xi + 1.0) / den;
  out.chi2 = ratio * ratio - 1.0;
  if (out.chi2 < 0.0 && out.chi2 > -1e-12) out.chi2 = 0.0;
  if (out.chi2 < 0.0) {
    out.reason = Rejection::negative_chi2;
    return out;
  }
  out.magnitude = std::sqrt(out.chi2);
  return out;
}

/// 2(m_alpha + n_alpha) = -(h + sign_term + 2(n_{-alpha} + n'_{-alpha} - s + 1)).
inline bool phase_condition(int h, const PrescriptionIntegers& ints, int sign_term) {
  const double lhs = 2.0 * ints.m_plus_n();
  const double rhs = -(h + sign_term + 2.0 * (ints.n_minus + ints.n_minus_prime - ints.s + 1.0));
  return std::abs(lhs - rhs) < 1e-12;
}

/// The s that satisfies the phase condition for the other integers.
inline double phase_condition_exponent(int h, const PrescriptionIntegers& ints, int sign_term) {
  return ints.m_plus_n() + ints.n_minus + ints.n_minus_prime + 1 + 0.5 * (h + sign_term);
}

/// True when the phase condition forces a half-integer s (h + sign_term odd).
inline bool exponent_is_semi_integer(int h, int sign_term) { return (h + sign_term) % 2 != 0; }

// ---------------------------------------------------------------------------
// Assembly and verification

/// Both pulses for a fixed choice of xi, chi and integers.
inline PulseSequence assemble_sequence(const SynthesisProblem& problem, int alpha, double xi,
                                       double chi, const PrescriptionIntegers& ints) {
  const int h = problem.h;
  const double j_anti = pair_coupling(problem.J, h, -alpha);
  const double j_diag = pair_coupling(problem.J, h, alpha);
  const double jp_anti = pair_coupling(problem.Jp, h, -alpha);
  const double jp_diag = pair_coupling(problem.Jp, h, alpha);
  const double root = std::sqrt(xi * xi + 1.0);

  auto make_pulse = [h](const Vec3& J, double b_alpha, double b_minus_alpha, int alpha_sign,
                        double duration) {
    const double b_plus = alpha_sign > 0 ? b_alpha : b_minus_alpha;
    const double b_minus = alpha_sign > 0 ? b_minus_alpha : b_alpha;
    Pulse p;
    p.config = CouplingConfig::along(h, J, 0.5 * (b_plus + b_minus), 0.5 * (b_plus - b_minus));
    p.duration = duration;
    return p;
  };

  PulseSequence seq;
  seq.h = h;
  seq.alpha = alpha;
  seq.xi = xi;
  seq.chi = chi;
  seq.integers = ints;
  const double t1 = (2 * ints.n_minus + 1) * std::numbers::pi / (2.0 * std::abs(j_anti) * root);
  const double t2 = (2 * ints.n_minus_prime + 1) * std::numbers::pi * std::abs(xi) /
                    (2.0 * std::abs(jp_anti) * root);
  seq.first = make_pulse(problem.J, xi * j_anti, chi * j_diag, alpha, t1);
  seq.second = make_pulse(problem.Jp, -jp_anti / xi, chi * jp_diag, alpha, t2);
  return seq;
}

/// U_h(t') U_h(t) from the closed forms.
inline ComplexMatrix rebuild(const PulseSequence& seq) {
  const EvolutionOperator u1 = evolution_closed_form(seq.first.config, seq.first.duration);
  const EvolutionOperator u2 = evolution_closed_form(seq.second.config, seq.second.duration);
  return u2.matrix * u1.matrix;
}

/// sign(q beta b'_{h alpha} j_{h alpha}) with q, beta of the diagonal block.
inline int phase_sign_term(const PulseSequence& seq, int diag_block) {
  const BlockSigns signs = block_signs(seq.h, diag_block);
  const ScaledParams first = scaled_params(seq.first.config);
  const ScaledParams second = scaled_params(seq.second.config);
  const double v = signs.q * signs.beta * second.b_or_zero(seq.alpha) * first.j_or_zero(seq.alpha);
  return (v > 0.0) - (v < 0.0);
}

/// Largest violation of the ratio prescriptions and the duration identity.
inline double prescription_defect(const SynthesisProblem& problem, const PulseSequence& seq) {
  const int h = seq.h;
  const int a = seq.alpha;
  const ScaledParams p1 = scaled_params(seq.first.config);
  const ScaledParams p2 = scaled_params(seq.second.config);
  const double j_anti = pair_coupling(problem.J, h, -a);
  const double jp_anti = pair_coupling(problem.Jp, h, -a);
  const double j_diag = pair_coupling(problem.J, h, a);
  const double jp_diag = pair_coupling(problem.Jp, h, a);
  const double half_turn = std::numbers::pi / (2.0 * std::sqrt(seq.xi * seq.xi + 1.0));
  double worst = 0.0;
  auto track = [&worst](double v) { worst = std::max(worst, std::abs(v)); };
  track(p1.field(a) / j_anti - seq.xi);
  track(p2.field(a) / jp_anti + 1.0 / seq.xi);
  if (j_diag != 0.0) track(p1.field(-a) / j_diag - seq.chi);
  if (jp_diag != 0.0) track(p2.field(-a) / jp_diag - seq.chi);
  track(std::abs(j_anti) * seq.first.duration / (2 * seq.integers.n_minus + 1) - half_turn);
  track(std::abs(jp_anti) * seq.second.duration /
            ((2 * seq.integers.n_minus_prime + 1) * std::abs(seq.xi)) -
        half_turn);
  return worst;
}

struct CombinedBlocks {
  Eigen::Matrix2cd diag;
  Eigen::Matrix2cd anti;
};

inline CombinedBlocks combined_blocks(int h, const TargetStructure& ts, const ComplexMatrix& u) {
  const auto pattern = block_pattern(h);
  auto take = [&](int label) {
    const BlockRows r = pattern[static_cast<std::size_t>(label - 1)];
    Eigen::Matrix2cd m;
    m << u(r.k - 1, r.k - 1), u(r.k - 1, r.l - 1), u(r.l - 1, r.k - 1), u(r.l - 1, r.l - 1);
    return m;
  };
  return {take(ts.diag_block), take(ts.anti_block)};
}

/// (-1)^s i^{h mod 2} sigma_{1 + h mod 2} for s = s_twice / 2.
inline Eigen::Matrix2cd antidiagonal_form(int h, int s_twice) {
  Complex sign(1.0, 0.0);
  for (int k = 0; k < ((s_twice % 4) + 4) % 4; ++k) sign *= kI;
  const ComplexMatrix sigma = pauli(1 + h % 2);
  const Complex ih = (h % 2 == 1) ? kI : Complex(1.0, 0.0);
  Eigen::Matrix2cd m = sign * ih * sigma;
  return m;
}

/// Enumerates the integer box, both xi and chi signs, and returns the
/// shortest (t + t') sequence whose rebuilt product matches the target.
inline SynthesisReport solve_two_pulse(const SynthesisProblem& problem, const GateTarget& target) {
  validate(problem, target);
  const TargetStructure ts = analyze_target(target);
  const int h = problem.h;
  const int alpha = ts.alpha_diag;

  const double j_anti = pair_coupling(problem.J, h, -alpha);
  const double j_diag = pair_coupling(problem.J, h, alpha);
  const double jp_anti = pair_coupling(problem.Jp, h, -alpha);
  const double jp_diag = pair_coupling(problem.Jp, h, alpha);
  const double jh = problem.J[static_cast<std::size_t>(h - 1)];
  const double jph = problem.Jp[static_cast<std::size_t>(h - 1)];
  const double s_ratio = std::abs(j_diag / j_anti);
  const double sp_ratio = std::abs(jp_diag / jp_anti);
  const double pv = jp_diag * j_diag;
  const int p_alpha = (pv > 0.0) - (pv < 0.0);

  SynthesisReport report;
  auto reject = [&report](Rejection r) { ++report.rejections[to_string(r)]; };
  std::optional<PulseSequence> best;
  double best_distance = 0.0;

  const SearchBounds& bb = problem.bounds;
  for (int n = bb.n_minus.lo; n <= bb.n_minus.hi; ++n) {
    for (int np = bb.n_minus_prime.lo; np <= bb.n_minus_prime.hi; ++np) {
      for (int k = bb.m_plus_n.lo; k <= bb.m_plus_n.hi; ++k) {
        if (k == 0) {
          reject(Rejection::zero_phase_integer);
          continue;
        }
        const double a_coef = (2 * n + 1) * jh / (2.0 * k * std::abs(j_anti));
        const double b_coef = (2 * np + 1) * jph / (2.0 * k * std::abs(jp_anti));
        const XiCandidates xis = candidate_xi(a_coef, b_coef);
        if (xis.values.empty()) {
          reject(*xis.reason);
          continue;
        }
        for (double xi : xis.values) {
          for (int na = bb.n_alpha.lo; na <= bb.n_alpha.hi; ++na) {
            if ((k - na) % 2 != 0) {
              reject(Rejection::odd_m_alpha);
              continue;
            }
            PrescriptionIntegers ints{n, np, k - na, na, 0.0};
            const ChiCandidate chi = candidate_chi(xi, ints, s_ratio, sp_ratio, p_alpha);
            if (!chi.magnitude) {
              reject(*chi.reason);
              continue;
            }
            const std::array<double, 2> chis{*chi.magnitude, -*chi.magnitude};
            const int chi_branches = *chi.magnitude == 0.0 ? 1 : 2;
            for (int c = 0; c < chi_branches; ++c) {
              ++report.candidates_examined;
              PulseSequence seq = assemble_sequence(problem, alpha, xi, chis[static_cast<std::size_t>(c)], ints);
              seq.sign_term = phase_sign_term(seq, ts.diag_block);
              seq.integers.s = phase_condition_exponent(h, seq.integers, seq.sign_term);
              const long s_twice = std::lround(2.0 * seq.integers.s);
              if (((s_twice % 4) + 4) % 4 != ts.s_twice ||
                  !phase_condition(h, seq.integers, seq.sign_term)) {
                reject(Rejection::phase_condition_failed);
                continue;
              }
              const ComplexMatrix u = rebuild(seq);
              const double dist = (u - target.matrix).norm();
              if (!(dist < problem.tolerance)) {
                reject(Rejection::verify_failed);
                continue;
              }
              ++report.verified_candidates;
              if (!best || seq.total_time() < best->total_time()) {
                best = seq;
                best_distance = dist;
              }
            }
          }
        }
      }
    }
  }

  if (best) {
    const ComplexMatrix u = rebuild(*best);
    report.feasible = true;
    report.sequence = best;
    report.exact_distance = best_distance;
    report.residual = global_phase_distance(u, target.matrix);
    const CombinedBlocks blocks = combined_blocks(h, ts, u);
    report.diag_block = blocks.diag;
    report.anti_block = blocks.anti;
  }
  return report;
}

}  // namespace isingtel
