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

// Teleportation driven by an Ising gate A_{h,j}^{0,pi/2}.
//
// Qubit 1 carries the input, qubits 2-3 share a Bell state beta_{AB}. The
// gate (a Bell-basis matrix) is conjugated back to the computational basis
// and applied to qubits 1-2, which are then measured in the computational or
// Bell basis. Qubit 3 receives a classical correction built from the gates
// X, Z, H of the computational basis; these never mix with the Bell-ordering
// sigma matrices used for the gate itself.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isingtel/algebra.hpp"
#include "isingtel/errors.hpp"
#include "isingtel/random.hpp"
#include "isingtel/synthesis.hpp"

namespace isingtel {

inline constexpr double kTeleportTolerance = 1e-10;
inline constexpr int kMaxTeleportWires = 4;

enum class MeasurementBasis { computational, bell };
enum class SamplingMode { enumerate_all, sample };
enum class CorrectionSource { table1, general_formula, brute_force };

inline const char* to_string(MeasurementBasis b) {
  return b == MeasurementBasis::bell ? "bell" : "computational";
}
inline const char* to_string(SamplingMode m) {
  return m == SamplingMode::sample ? "sample" : "enumerate";
}
inline const char* to_string(CorrectionSource s) {
  switch (s) {
    case CorrectionSource::table1: return "table1";
    case CorrectionSource::general_formula: return "general_formula";
    case CorrectionSource::brute_force: return "brute_force";
  }
  return "unknown";
}

struct TeleportConfig {
  GateTarget gate = gate_library(1, 2);
  BellLabel ancilla{0, 0};
  MeasurementBasis basis = MeasurementBasis::bell;
  SamplingMode mode = SamplingMode::enumerate_all;
  std::uint64_t seed = 0;
  CorrectionSource correction = CorrectionSource::brute_force;
};

struct MeasurementRecord {
  MeasurementBasis basis = MeasurementBasis::bell;
  int m1 = 0;
  int m2 = 0;
  double probability = 0.0;
  ComplexVector branch;     // unnormalized qubit-3 amplitudes
  ComplexVector post_state;  // normalized (zero when the branch is unreachable)
};

/// Z^a X^b, optionally preceded by H (Z^a X^b H). When `gates` is set the
/// operator is the literal product of those tokens, leftmost acting last.
struct CorrectionPlan {
  int a = 0;
  int b = 0;
  bool hadamard = false;
  CorrectionSource source = CorrectionSource::brute_force;
  std::vector<std::string> gates;

  std::string label() const {
    std::vector<std::string> tokens = gates;
    if (tokens.empty()) {
      if (a) tokens.emplace_back("Z3");
      if (b) tokens.emplace_back("X3");
      if (hadamard) tokens.emplace_back("H3");
      if (tokens.empty()) tokens.emplace_back("I3");
    }
    std::string out;
    for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
    return out;
  }
};

inline ComplexMatrix hadamard_gate() {
  ComplexMatrix m(2, 2);
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return m;
}

inline ComplexMatrix single_qubit_gate(const std::string& token) {
  if (token == "I3") return identity(2);
  if (token == "X3") return pauli(1);
  if (token == "Z3") return pauli(3);
  if (token == "H3") return hadamard_gate();
  throw InputError("unknown correction gate '" + token + "'");
}

inline ComplexMatrix correction_matrix(const CorrectionPlan& plan) {
  ComplexMatrix m = identity(2);
  if (!plan.gates.empty()) {
    for (const auto& token : plan.gates) m = m * single_qubit_gate(token);
    return m;
  }
  if (plan.a % 2) m = m * pauli(3);
  if (plan.b % 2) m = m * pauli(1);
  if (plan.hadamard) m = m * hadamard_gate();
  return m;
}

// ---------------------------------------------------------------------------
// Protocol steps

namespace detail {

inline StateVector protocol_state(const ComplexVector& input, BellLabel ancilla) {
  if (input.size() != 2) throw DimensionError("teleport: input must be a single qubit");
  return {3, kron(input, bell_state(ancilla))};
}

}  // namespace detail

inline StateVector prepare_input(Complex alpha, Complex beta, BellLabel ancilla) {
  validate(ancilla);
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw InputError("prepare_input: |alpha|^2 + |beta|^2 must equal 1");
  }
  ComplexVector in(2);
  in << alpha, beta;
  return detail::protocol_state(in, ancilla);
}

/// Applies P A P^dag to qubits 1-2 (indices 0, 1).
inline StateVector apply_teleport_gate(const StateVector& state, const GateTarget& gate) {
  if (state.qubit_count() < 2) throw DimensionError("apply_teleport_gate: need at least 2 qubits");
  return apply_gate(state, conjugate_from_bell(gate.matrix), {0, 1});
}

/// Projects qubits 1-2 of a 3-qubit state. Enumerate mode returns the four
/// branches ordered by (m1, m2); sample mode returns one seeded draw.
inline std::vector<MeasurementRecord> measure_first_two(const StateVector& state,
                                                        MeasurementBasis basis,
                                                        SamplingMode mode = SamplingMode::enumerate_all,
                                                        std::uint64_t seed = 0) {
  if (state.qubit_count() != 3) throw DimensionError("measure_first_two: expected 3 qubits");
  const StateVector rotated = basis == MeasurementBasis::bell
                                  ? apply_gate(state, bell_change_of_basis().adjoint(), {0, 1})
                                  : state;
  std::vector<MeasurementRecord> records;
  for (int outcome = 0; outcome < 4; ++outcome) {
    MeasurementRecord rec;
    rec.basis = basis;
    rec.m1 = outcome / 2;
    rec.m2 = outcome % 2;
    rec.branch = rotated.amplitudes().segment(2 * outcome, 2);
    rec.probability = rec.branch.squaredNorm();
    rec.post_state = rec.probability > 0.0 ? ComplexVector(rec.branch / std::sqrt(rec.probability))
                                           : ComplexVector(ComplexVector::Zero(2));
    records.push_back(std::move(rec));
  }
  if (mode == SamplingMode::enumerate_all) return records;

  Rng rng(seed);
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& rec : records) {
    acc += rec.probability;
    if (u < acc) return {rec};
  }
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->probability > 0.0) return {*it};
  }
  return {records.back()};
}

// ---------------------------------------------------------------------------
// Corrections

/// Complementary gates for A_{1,2}^{0,pi/2} with beta_00, literally as tabulated.
inline CorrectionPlan table1_correction(MeasurementBasis basis, int m1, int m2) {
  if ((m1 != 0 && m1 != 1) || (m2 != 0 && m2 != 1)) {
    throw InputError("table1_correction: outcome bits must be 0 or 1");
  }
  CorrectionPlan plan;
  plan.source = CorrectionSource::table1;
  const int outcome = 2 * m1 + m2;
  if (basis == MeasurementBasis::computational) {
    plan.hadamard = true;
    switch (outcome) {
      case 0: plan.gates = {"Z3", "H3"}; plan.a = 1; break;
      case 1: plan.gates = {"X3", "Z3", "H3"}; plan.a = 1; plan.b = 1; break;
      case 2: plan.gates = {"H3"}; break;
      default: plan.gates = {"X3", "H3"}; plan.b = 1; break;
    }
  } else {
    switch (outcome) {
      case 0: plan.gates = {"I3"}; break;
      case 1: plan.gates = {"X3"}; plan.b = 1; break;
      case 2: plan.gates = {"Z3", "X3"}; plan.a = 1; plan.b = 1; break;
      default: plan.gates = {"Z3"}; plan.a = 1; break;
    }
  }
  return plan;
}

/// Unreduced exponents of the closed-form rule for Bell-basis measurement:
///   a = A + (4(h-5/2)^2 - 9)/8 (j - 2 - M2) + (h-2)^2 M1
///   b = B + (4(h-3/2)^2 - 9)/8 (j - 2 - M1) + (h-2)^2 M2
struct FormulaExponents {
  double a = 0.0;
  double b = 0.0;
};

inline FormulaExponents general_exponents(int h, int j, int A, int B, int m1, int m2) {
  const double hd = h;
  const double ca = (4.0 * (hd - 2.5) * (hd - 2.5) - 9.0) / 8.0;
  const double cb = (4.0 * (hd - 1.5) * (hd - 1.5) - 9.0) / 8.0;
  const double sq = (hd - 2.0) * (hd - 2.0);
  return {A + ca * (j - 2 - m2) + sq * m1, B + cb * (j - 2 - m1) + sq * m2};
}

inline int mod2(double v) {
  const long r = std::lround(v);
  return static_cast<int>(((r % 2) + 2) % 2);
}

inline void require_protocol_indices(int h, int j, int A, int B, int m1, int m2) {
  require_direction(h);
  if (j != 1 && j != 2) throw InputError("gate label j must be 1 or 2");
  for (int bit : {A, B, m1, m2}) {
    if (bit != 0 && bit != 1) throw InputError("ancilla and outcome bits must be 0 or 1");
  }
}

inline CorrectionPlan general_correction(int h, int j, int A, int B, int m1, int m2) {
  require_protocol_indices(h, j, A, B, m1, m2);
  const FormulaExponents e = general_exponents(h, j, A, B, m1, m2);
  CorrectionPlan plan;
  plan.source = CorrectionSource::general_formula;
  plan.a = mod2(e.a);
  plan.b = mod2(e.b);
  return plan;
}

/// Linear map (alpha, beta) -> unnormalized qubit-3 amplitudes of one branch,
/// before correction.
inline Eigen::Matrix2cd branch_map(const GateTarget& gate, BellLabel ancilla,
                                   MeasurementBasis basis, int m1, int m2) {
  Eigen::Matrix2cd map;
  for (int col = 0; col < 2; ++col) {
    ComplexVector in = ComplexVector::Zero(2);
    in(col) = 1.0;
    const StateVector after = apply_teleport_gate(detail::protocol_state(in, ancilla), gate);
    const auto records = measure_first_two(after, basis);
    map.col(col) = records[static_cast<std::size_t>(2 * m1 + m2)].branch;
  }
  return map;
}

/// Deviation of C * M from a multiple of I2, after scaling to unit norm.
inline double correction_defect(const ComplexMatrix& correction, const Eigen::Matrix2cd& map) {
  const ComplexMatrix restored = correction * ComplexMatrix(map);
  const double n = restored.norm();
  if (n == 0.0) return std::numeric_limits<double>::infinity();
  return global_phase_distance(restored * (std::sqrt(2.0) / n), identity(2));
}

/// Searches Z^a X^b (then Z^a X^b H) for the correction that restores the
/// input up to a global phase, by running the protocol on |0> and |1>.
inline CorrectionPlan brute_force_correction(int h, int j, int A, int B, int m1, int m2,
                                             MeasurementBasis basis = MeasurementBasis::bell) {
  require_protocol_indices(h, j, A, B, m1, m2);
  const Eigen::Matrix2cd map = branch_map(gate_library(h, j), BellLabel{A, B}, basis, m1, m2);
  for (bool with_h : {false, true}) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        CorrectionPlan plan{a, b, with_h, CorrectionSource::brute_force, {}};
        if (correction_defect(correction_matrix(plan), map) < 1e-10) return plan;
      }
    }
  }
  throw ProtocolBreakage("no Pauli correction restores the input for h=" + std::to_string(h) +
                         " j=" + std::to_string(j) + " ancilla=" + std::to_string(A) +
                         std::to_string(B) + " outcome=" + std::to_string(m1) +
                         std::to_string(m2) + " basis=" + to_string(basis));
}

inline CorrectionPlan choose_correction(CorrectionSource source, const GateTarget& gate,
                                        BellLabel ancilla, MeasurementBasis basis, int m1, int m2) {
  switch (source) {
    case CorrectionSource::table1:
      if (gate.h != 1 || gate.j != 2 || ancilla != BellLabel{0, 0}) {
        throw InputError("table1 corrections only apply to A_{1,2} with ancilla beta_00");
      }
      return table1_correction(basis, m1, m2);
    case CorrectionSource::general_formula:
      if (basis != MeasurementBasis::bell) {
        throw InputError("general_formula corrections assume Bell-basis measurement");
      }
      return general_correction(gate.h, gate.j, ancilla.first, ancilla.second, m1, m2);
    case CorrectionSource::brute_force:
      return brute_force_correction(gate.h, gate.j, ancilla.first, ancilla.second, m1, m2, basis);
  }
  throw InputError("unknown correction source");
}

// ---------------------------------------------------------------------------
// Single-qubit protocol

struct TeleportOutcome {
  MeasurementRecord record;
  CorrectionPlan correction;
  ComplexVector output;  // corrected, normalized qubit-3 state
  double fidelity = 0.0;
  bool reachable = true;
};

inline std::vector<TeleportOutcome> run_single(const TeleportConfig& config, Complex alpha,
                                               Complex beta) {
  const StateVector prepared = prepare_input(alpha, beta, config.ancilla);
  const StateVector after = apply_teleport_gate(prepared, config.gate);
  const auto records = measure_first_two(after, config.basis, config.mode, config.seed);
  ComplexVector input(2);
  input << alpha, beta;

  std::vector<TeleportOutcome> outcomes;
  for (const auto& rec : records) {
    TeleportOutcome out;
    out.record = rec;
    out.correction =
        choose_correction(config.correction, config.gate, config.ancilla, config.basis, rec.m1, rec.m2);
    out.reachable = rec.probability > 1e-24;
    out.output = correction_matrix(out.correction) * rec.post_state;
    out.fidelity = out.reachable ? std::norm(input.dot(out.output)) : 1.0;
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

/// Corrected, unnormalized qubit-3 outputs for all four branches; linear in the input.
inline std::array<ComplexVector, 4> corrected_branches(const ComplexVector& input,
                                                       const GateTarget& gate, BellLabel ancilla,
                                                       MeasurementBasis basis,
                                                       CorrectionSource source) {
  const StateVector after = apply_teleport_gate(detail::protocol_state(input, ancilla), gate);
  const auto records = measure_first_two(after, basis);
  std::array<ComplexVector, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& rec = records[i];
    out[i] = correction_matrix(choose_correction(source, gate, ancilla, basis, rec.m1, rec.m2)) *
             rec.branch;
  }
  return out;
}

/// Sum over branches of |v><v| for the uncorrected qubit-3 branches.
inline Eigen::Matrix2cd bob_average_state(const GateTarget& gate, BellLabel ancilla,
                                          MeasurementBasis basis, Complex alpha, Complex beta) {
  const StateVector after = apply_teleport_gate(prepare_input(alpha, beta, ancilla), gate);
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (const auto& rec : measure_first_two(after, basis)) rho += rec.branch * rec.branch.adjoint();
  return rho;
}

struct LinearityReport {
  int trials = 0;
  int passed = 0;
  double max_defect = 0.0;
  bool ok() const { return trials > 0 && passed == trials; }
};

/// T(a psi_a + b psi_b) against a T(psi_a) + b T(psi_b), branch by branch, up
/// to one phase per branch.
inline LinearityReport linearity_check(const GateTarget& gate, BellLabel ancilla, int trials,
                                       std::uint64_t seed,
                                       MeasurementBasis basis = MeasurementBasis::bell,
                                       double tol = kTeleportTolerance) {
  if (trials < 1) throw InputError("linearity_check: trials must be >= 1");
  Rng rng(seed);
  LinearityReport rep;
  rep.trials = trials;
  const auto source = CorrectionSource::brute_force;
  for (int t = 0; t < trials; ++t) {
    const ComplexVector psi_a = random_state(1, rng).amplitudes();
    const ComplexVector psi_b = random_state(1, rng).amplitudes();
    const Complex ca = rng.complex_normal();
    const Complex cb = rng.complex_normal();
    const ComplexVector mixed = ca * psi_a + cb * psi_b;
    const auto lhs = corrected_branches(mixed, gate, ancilla, basis, source);
    const auto ra = corrected_branches(psi_a, gate, ancilla, basis, source);
    const auto rb = corrected_branches(psi_b, gate, ancilla, basis, source);
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const ComplexVector rhs = ca * ra[i] + cb * rb[i];
      const double scale = std::max(1.0, rhs.norm());
      worst = std::max(worst, phase_insensitive_distance(lhs[i], rhs) / scale);
    }
    rep.max_defect = std::max(rep.max_defect, worst);
    if (worst < tol) ++rep.passed;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Correction-rule audit

struct CorrectionAuditRow {
  int h = 1, j = 1, A = 0, B = 0, m1 = 0, m2 = 0;
  FormulaExponents raw;
  CorrectionPlan formula;
  CorrectionPlan brute;
  bool agree = false;
};

/// All 96 (h, j, A, B, M1, M2) tuples, Bell-basis measurement.
inline std::vector<CorrectionAuditRow> audit_correction_formula() {
  std::vector<CorrectionAuditRow> rows;
  for (int h = 1; h <= 3; ++h) {
    for (int j = 1; j <= 2; ++j) {
      for (int A = 0; A < 2; ++A) {
        for (int B = 0; B < 2; ++B) {
          for (int m1 = 0; m1 < 2; ++m1) {
            for (int m2 = 0; m2 < 2; ++m2) {
              CorrectionAuditRow row{h, j, A, B, m1, m2, general_exponents(h, j, A, B, m1, m2),
                                     general_correction(h, j, A, B, m1, m2),
                                     brute_force_correction(h, j, A, B, m1, m2), false};
              row.agree = row.formula.a == row.brute.a && row.formula.b == row.brute.b;
              rows.push_back(row);
            }
          }
        }
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Table 1 regeneration

struct Table1Row {
  MeasurementBasis basis = MeasurementBasis::computational;
  int m1 = 0;
  int m2 = 0;
  std::string measurement;        // "|00>" or "|beta_--">
  std::string teleported_state;   // regenerated from simulation
  std::string correction;         // regenerated from simulation
  std::string printed_state;      // as tabulated
  std::string printed_correction;
  double min_fidelity = 0.0;      // tabulated gates on random inputs
  bool matches() const {
    return teleported_state == printed_state && correction == printed_correction;
  }
};

namespace detail {

inline std::string render_state(const Eigen::Matrix2cd& coords, const std::array<const char*, 2>& kets,
                                bool* ok) {
  std::string out;
  const std::array<const char*, 2> amp{"alpha", "beta"};
  for (int col = 0; col < 2; ++col) {
    int row = std::abs(coords(0, col)) > std::abs(coords(1, col)) ? 0 : 1;
    const Complex c = coords(row, col);
    const bool unit_real = std::abs(std::abs(c.real()) - 1.0) < 1e-9 && std::abs(c.imag()) < 1e-9 &&
                           std::abs(coords(1 - row, col)) < 1e-9;
    if (!unit_real) *ok = false;
    const bool negative = c.real() < 0.0;
    if (col == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += std::string(amp[static_cast<std::size_t>(col)]) + "|" + kets[static_cast<std::size_t>(row)] + ">";
  }
  return out;
}

}  // namespace detail

/// Rebuilds the eight rows for A_{1,2}^{0,pi/2} with beta_00 from simulation:
/// the pre-correction state of qubit 3 (in the X eigenbasis for computational
/// measurement) and the brute-force correction, alongside the tabulated values.
inline std::vector<Table1Row> regenerate_table1(int fidelity_trials = 50, std::uint64_t seed = 1) {
  static const std::array<const char*, 8> printed_states{
      "alpha|+> - beta|->", "-alpha|-> + beta|+>", "alpha|+> + beta|->", "alpha|-> + beta|+>",
      "alpha|0> + beta|1>", "alpha|1> + beta|0>",  "alpha|1> - beta|0>", "-alpha|0> + beta|1>"};
  const GateTarget gate = gate_library(1, 2);
  const BellLabel ancilla{0, 0};
  Rng rng(seed);
  std::vector<Table1Row> rows;
  for (MeasurementBasis basis : {MeasurementBasis::computational, MeasurementBasis::bell}) {
    const bool comp = basis == MeasurementBasis::computational;
    for (int outcome = 0; outcome < 4; ++outcome) {
      Table1Row row;
      row.basis = basis;
      row.m1 = outcome / 2;
      row.m2 = outcome % 2;
      row.measurement = comp ? "|" + std::to_string(row.m1) + std::to_string(row.m2) + ">"
                             : "|beta_" + BellLabel{row.m1, row.m2}.sign_name() + ">";
      Eigen::Matrix2cd map = 2.0 * branch_map(gate, ancilla, basis, row.m1, row.m2);
      if (comp) map = Eigen::Matrix2cd(hadamard_gate()) * map;
      bool ok = true;
      row.teleported_state = detail::render_state(map, comp ? std::array<const char*, 2>{"+", "-"}
                                                            : std::array<const char*, 2>{"0", "1"},
                                                  &ok);
      if (!ok) row.teleported_state += " (non-unit coefficients)";

      const CorrectionPlan found = brute_force_correction(1, 2, 0, 0, row.m1, row.m2, basis);
      std::vector<std::string> tokens;
      if (comp) {
        if (found.b) tokens.emplace_back("X3");
        if (found.a) tokens.emplace_back("Z3");
        if (found.hadamard) tokens.emplace_back("H3");
      } else {
        if (found.a) tokens.emplace_back("Z3");
        if (found.b) tokens.emplace_back("X3");
        if (found.hadamard) tokens.emplace_back("H3");
      }
      if (tokens.empty()) tokens.emplace_back("I3");
      CorrectionPlan rendered;
      rendered.gates = tokens;
      row.correction = rendered.label();

      const CorrectionPlan printed = table1_correction(basis, row.m1, row.m2);
      row.printed_correction = printed.label();
      row.printed_state = printed_states[static_cast<std::size_t>((comp ? 0 : 4) + outcome)];

      TeleportConfig cfg;
      cfg.gate = gate;
      cfg.ancilla = ancilla;
      cfg.basis = basis;
      cfg.correction = CorrectionSource::table1;
      row.min_fidelity = 1.0;
      for (int t = 0; t < fidelity_trials; ++t) {
        const StateVector psi = random_state(1, rng);
        const auto outs = run_single(cfg, psi[0], psi[1]);
        row.min_fidelity = std::min(row.min_fidelity, outs[static_cast<std::size_t>(outcome)].fidelity);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// n-qubit teleportation

struct WirePlan {
  GateTarget gate = gate_library(1, 2);
  BellLabel ancilla{0, 0};
  MeasurementBasis basis = MeasurementBasis::bell;
};

struct MultiQubitPlan {
  std::vector<WirePlan> wires;
  CorrectionSource correction = CorrectionSource::brute_force;
};

/// Physical qubits (1-based) used by wire j of an n-wire run: input j, the
/// sender's ancilla half n+2j-1 and the receiver's half n+2j.
struct WireLayout {
  int wire = 1;
  int input_qubit = 1;
  int sender_qubit = 2;
  int receiver_qubit = 3;
};

inline std::vector<WireLayout> wire_layout(int n) {
  std::vector<WireLayout> out;
  for (int j = 1; j <= n; ++j) out.push_back({j, j, n + 2 * j - 1, n + 2 * j});
  return out;
}

struct MultiBranch {
  std::vector<std::array<int, 2>> outcomes;  // (m1, m2) per wire
  double probability = 0.0;
  std::vector<CorrectionPlan> corrections;
  double fidelity = 0.0;
};

struct MultiQubitSummary {
  int n = 0;
  std::vector<WireLayout> layout;
  std::vector<MultiBranch> branches;
  double total_probability = 0.0;
  double min_fidelity = 1.0;
  bool success = false;
};

inline MultiQubitSummary run_multiqubit(const StateVector& state, const MultiQubitPlan& plan,
                                        double tol = kTeleportTolerance) {
  const int n = state.qubit_count();
  if (n > kMaxTeleportWires) throw DimensionError("run_multiqubit: at most 4 wires (12 qubits)");
  if (static_cast<int>(plan.wires.size()) != n) {
    throw InputError("run_multiqubit: plan has " + std::to_string(plan.wires.size()) +
                     " wires for a " + std::to_string(n) + "-qubit state");
  }
  for (const auto& w : plan.wires) validate(w.ancilla);
  const int total = 3 * n;
  const auto layout = wire_layout(n);

  ComplexVector full = state.amplitudes();
  for (const auto& w : plan.wires) full = kron(full, bell_state(w.ancilla));
  StateVector st(total, full);
  for (const auto& lay : layout) {
    const WirePlan& w = plan.wires[static_cast<std::size_t>(lay.wire - 1)];
    const std::vector<int> pair{lay.input_qubit - 1, lay.sender_qubit - 1};
    st = apply_gate(st, conjugate_from_bell(w.gate.matrix), pair);
    if (w.basis == MeasurementBasis::bell) st = apply_gate(st, bell_change_of_basis().adjoint(), pair);
  }

  // Correction operators per wire and outcome, resolved once.
  std::vector<std::array<ComplexMatrix, 4>> correction_ops(static_cast<std::size_t>(n));
  std::vector<std::array<CorrectionPlan, 4>> correction_plans(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const WirePlan& w = plan.wires[static_cast<std::size_t>(j)];
    for (int o = 0; o < 4; ++o) {
      const CorrectionPlan p = choose_correction(plan.correction, w.gate, w.ancilla, w.basis, o / 2, o % 2);
      correction_plans[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] = p;
      correction_ops[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] = correction_matrix(p);
    }
  }

  auto bit_of = [total](int qubit_1based) { return std::uint64_t{1} << (total - qubit_1based); };

  MultiQubitSummary summary;
  summary.n = n;
  summary.layout = layout;
  summary.success = true;
  const std::uint64_t combos = std::uint64_t{1} << (2 * n);
  const std::uint64_t out_dim = std::uint64_t{1} << n;
  for (std::uint64_t combo = 0; combo < combos; ++combo) {
    MultiBranch br;
    std::uint64_t fixed = 0;
    for (int j = 1; j <= n; ++j) {
      const int o = static_cast<int>((combo >> (2 * (n - j))) & 3u);
      br.outcomes.push_back({o / 2, o % 2});
      const auto& lay = layout[static_cast<std::size_t>(j - 1)];
      if (o / 2) fixed |= bit_of(lay.input_qubit);
      if (o % 2) fixed |= bit_of(lay.sender_qubit);
      br.corrections.push_back(correction_plans[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(o)]);
    }
    ComplexVector out(static_cast<Eigen::Index>(out_dim));
    for (std::uint64_t b = 0; b < out_dim; ++b) {
      std::uint64_t idx = fixed;
      for (int j = 1; j <= n; ++j) {
        if (b & (std::uint64_t{1} << (n - j))) idx |= bit_of(layout[static_cast<std::size_t>(j - 1)].receiver_qubit);
      }
      out(static_cast<Eigen::Index>(b)) = st[static_cast<Eigen::Index>(idx)];
    }
    StateVector received(n, out);
    for (int j = 1; j <= n; ++j) {
      const int o = 2 * br.outcomes[static_cast<std::size_t>(j - 1)][0] + br.outcomes[static_cast<std::size_t>(j - 1)][1];
      received = apply_gate(received, correction_ops[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(o)], {j - 1});
    }
    br.probability = received.amplitudes().squaredNorm();
    summary.total_probability += br.probability;
    if (br.probability > 1e-24) {
      br.fidelity = fidelity(state, received.normalized());
    } else {
      br.fidelity = 1.0;
    }
    summary.min_fidelity = std::min(summary.min_fidelity, br.fidelity);
    if (br.fidelity <= 1.0 - tol) summary.success = false;
    summary.branches.push_back(std::move(br));
  }
  return summary;
}

}  // namespace isingtel
