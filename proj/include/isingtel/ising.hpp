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

// Two-spin anisotropic Ising Hamiltonian with local fields along one axis h,
//
//   H_h = -sum_k J_k s1_k s2_k + B1_h s1_h + B2_h s2_h,
//
// and the scalar quantities its Bell-basis evolution is written in.
//
// Sign indices (mu, nu, alpha, beta) are the integers -1 and +1. Quantities
// labelled by a sign are stored in two-slot arrays indexed by sign_slot().

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "isingtel/algebra.hpp"
#include "isingtel/errors.hpp"

namespace isingtel {

using Vec3 = std::array<double, 3>;

inline constexpr std::array<int, 2> kSigns{-1, +1};

/// Slot 0 holds the -1 entry, slot 1 the +1 entry.
constexpr std::size_t sign_slot(int sign) { return sign < 0 ? 0 : 1; }

inline void require_sign(int s, const char* what) {
  if (s != -1 && s != 1) throw InputError(std::string(what) + ": sign index must be -1 or +1");
}

inline void require_direction(int h) {
  if (h < 1 || h > 3) throw InputError("field direction h must be 1, 2 or 3");
}

/// The two directions other than h, as 1-based indices (i, j) with i < j.
/// J_{{h}+-} = J_i +- J_j.
inline std::pair<int, int> coupling_pair(int h) {
  require_direction(h);
  switch (h) {
    case 1: return {2, 3};
    case 2: return {1, 3};
    default: return {1, 2};
  }
}

struct CouplingConfig {
  Vec3 J{0.0, 0.0, 0.0};
  Vec3 B1{0.0, 0.0, 0.0};
  Vec3 B2{0.0, 0.0, 0.0};
  int h = 3;

  double field1() const { return B1[static_cast<std::size_t>(h - 1)]; }
  double field2() const { return B2[static_cast<std::size_t>(h - 1)]; }

  /// Config whose only nonzero field components lie along h.
  static CouplingConfig along(int h, Vec3 J, double b1, double b2) {
    require_direction(h);
    CouplingConfig cfg;
    cfg.h = h;
    cfg.J = J;
    cfg.B1[static_cast<std::size_t>(h - 1)] = b1;
    cfg.B2[static_cast<std::size_t>(h - 1)] = b2;
    return cfg;
  }
};

inline void validate(const CouplingConfig& cfg) {
  require_direction(cfg.h);
  for (std::size_t k = 0; k < 3; ++k) {
    if (!std::isfinite(cfg.J[k]) || !std::isfinite(cfg.B1[k]) || !std::isfinite(cfg.B2[k])) {
      throw InvalidConfig("CouplingConfig: non-finite entry");
    }
    if (static_cast<int>(k) + 1 != cfg.h && (cfg.B1[k] != 0.0 || cfg.B2[k] != 0.0)) {
      throw InvalidConfig("CouplingConfig: field component " + std::to_string(k + 1) +
                          " is nonzero but the field is restricted to direction " +
                          std::to_string(cfg.h));
    }
  }
}

/// Computational-basis Hamiltonian (4x4, Hermitian, traceless).
inline ComplexMatrix hamiltonian_matrix(const CouplingConfig& cfg) {
  validate(cfg);
  const ComplexMatrix i2 = identity(2);
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  for (int k = 1; k <= 3; ++k) {
    h -= cfg.J[static_cast<std::size_t>(k - 1)] * kron(pauli(k), pauli(k));
  }
  const ComplexMatrix s = pauli(cfg.h);
  h += cfg.field1() * kron(s, i2) + cfg.field2() * kron(i2, s);
  return h;
}

/// Scaled parameters. b_{h mu} = B_{h mu}/R_{h mu}, j_{h mu} = J_{{h},-mu}/R_{h mu},
/// R_{h mu} = sqrt(B_{h mu}^2 + J_{{h},-mu}^2). b and j are undefined where R = 0.
struct ScaledParams {
  int h = 3;
  double Jh = 0.0;
  std::array<double, 2> J_pair{};  // J_{{h}-}, J_{{h}+}
  std::array<double, 2> B{};       // B_{h-}, B_{h+}
  std::array<double, 2> R{};
  std::array<std::optional<double>, 2> b{};
  std::array<std::optional<double>, 2> j{};

  double coupling(int sign) const { return J_pair[sign_slot(sign)]; }
  double field(int sign) const { return B[sign_slot(sign)]; }
  double radius(int sign) const { return R[sign_slot(sign)]; }
  bool degenerate(int sign) const { return !b[sign_slot(sign)].has_value(); }
  /// b_{h,sign}; 0 stands in for the undefined value because it is only ever
  /// multiplied by sin(R t) = 0 in the degenerate case.
  double b_or_zero(int sign) const { return b[sign_slot(sign)].value_or(0.0); }
  double j_or_zero(int sign) const { return j[sign_slot(sign)].value_or(0.0); }
};

inline ScaledParams scaled_params(const CouplingConfig& cfg) {
  validate(cfg);
  ScaledParams p;
  p.h = cfg.h;
  p.Jh = cfg.J[static_cast<std::size_t>(cfg.h - 1)];
  const auto [i, j] = coupling_pair(cfg.h);
  const double Ji = cfg.J[static_cast<std::size_t>(i - 1)];
  const double Jj = cfg.J[static_cast<std::size_t>(j - 1)];
  p.J_pair = {Ji - Jj, Ji + Jj};
  p.B = {cfg.field1() - cfg.field2(), cfg.field1() + cfg.field2()};
  for (int mu : kSigns) {
    const auto s = sign_slot(mu);
    const double bm = p.field(mu);
    const double jm = p.coupling(-mu);
    p.R[s] = std::hypot(bm, jm);
    if (p.R[s] > 0.0) {
      p.b[s] = bm / p.R[s];
      p.j[s] = jm / p.R[s];
    }
  }
  return p;
}

/// E_{mu nu} = mu J_h + nu R_{h,-mu}, ordered (--, -+, +-, ++).
inline std::array<double, 4> eigenvalues(const CouplingConfig& cfg) {
  const ScaledParams p = scaled_params(cfg);
  std::array<double, 4> e{};
  std::size_t idx = 0;
  for (int mu : kSigns) {
    for (int nu : kSigns) {
      e[idx++] = mu * p.Jh + nu * p.radius(-mu);
    }
  }
  return e;
}

/// Phases and block entries at time t:
///   Delta^+_{h mu} = mu J_h t,  Delta^-_{h mu} = R_{h,-mu} t,
///   e^beta_{h alpha} = cos Delta^-_alpha + i beta j_{h,-alpha} sin Delta^-_alpha,
///   d_{h alpha} = b_{h,-alpha} sin Delta^-_alpha.
struct ReducedQuantities {
  std::array<double, 2> delta_plus{};
  std::array<double, 2> delta_minus{};
  std::array<std::array<Complex, 2>, 2> e{};  // e[slot(alpha)][slot(beta)]
  std::array<double, 2> d{};

  double delta(int mu, int nu) const {
    return nu > 0 ? delta_plus[sign_slot(mu)] : delta_minus[sign_slot(mu)];
  }
  Complex e_of(int alpha, int beta) const { return e[sign_slot(alpha)][sign_slot(beta)]; }
  double d_of(int alpha) const { return d[sign_slot(alpha)]; }
};

inline ReducedQuantities reduced_quantities(const CouplingConfig& cfg, double t) {
  if (!std::isfinite(t)) throw InputError("reduced_quantities: non-finite time");
  const ScaledParams p = scaled_params(cfg);
  ReducedQuantities rq;
  for (int a : kSigns) {
    const auto s = sign_slot(a);
    rq.delta_plus[s] = a * p.Jh * t;
    rq.delta_minus[s] = p.radius(-a) * t;
    const double c = std::cos(rq.delta_minus[s]);
    const double sn = std::sin(rq.delta_minus[s]);
    for (int beta : kSigns) {
      rq.e[s][sign_slot(beta)] = Complex(c, beta * p.j_or_zero(-a) * sn);
    }
    rq.d[s] = p.b_or_zero(-a) * sn;
  }
  return rq;
}

}  // namespace isingtel
