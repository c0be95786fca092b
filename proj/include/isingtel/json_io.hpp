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

// JSON encoding of configs and reports. Complex numbers are [re, im] pairs,
// matrices are row-major lists of rows. Every top-level document carries a
// format_version.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "isingtel/errors.hpp"
#include "isingtel/evolution.hpp"
#include "isingtel/synthesis.hpp"
#include "isingtel/teleport.hpp"

namespace isingtel::json_io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// ---------------------------------------------------------------------------
// Primitives

inline Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

template <typename Derived>
Json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline double number_from(const Json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + ": expected a number");
  return j.get<double>();
}

inline int int_from(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + ": expected an integer");
  return j.get<int>();
}

inline Complex complex_from(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": expected [re, im]");
  return {number_from(j[0], what), number_from(j[1], what)};
}

inline ComplexMatrix matrix_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError(what + ": expected a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionError(what + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from(row[static_cast<std::size_t>(c)], what);
    }
  }
  return m;
}

inline Vec3 vec3_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw InputError(what + ": expected 3 numbers");
  return {number_from(j[0], what), number_from(j[1], what), number_from(j[2], what)};
}

inline const Json& require_key(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(what + ": missing key '" + key + "'");
  }
  return j.at(key);
}

inline void check_format_version(const Json& j, const std::string& what) {
  if (j.contains("format_version") && int_from(j.at("format_version"), what) != kFormatVersion) {
    throw InputError(what + ": unsupported format_version");
  }
}

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": malformed JSON (" + e.what() + ")");
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

/// Two-space indentation, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Coupling configurations

inline Json to_json(const CouplingConfig& cfg) {
  return Json{{"J", cfg.J}, {"B1", cfg.B1}, {"B2", cfg.B2}, {"h", cfg.h}};
}

inline CouplingConfig coupling_from_json(const Json& j) {
  const std::string what = "CouplingConfig";
  check_format_version(j, what);
  CouplingConfig cfg;
  cfg.h = int_from(require_key(j, "h", what), what + ".h");
  cfg.J = vec3_from(require_key(j, "J", what), what + ".J");
  if (j.contains("B1")) cfg.B1 = vec3_from(j.at("B1"), what + ".B1");
  if (j.contains("B2")) cfg.B2 = vec3_from(j.at("B2"), what + ".B2");
  validate(cfg);
  return cfg;
}

// ---------------------------------------------------------------------------
// Synthesis

inline Json to_json(const IntRange& r) { return Json::array({r.lo, r.hi}); }

inline IntRange range_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": expected [lo, hi]");
  return {int_from(j[0], what), int_from(j[1], what)};
}

inline Json to_json(const SearchBounds& b) {
  return Json{{"n", to_json(b.n_minus)},
              {"n_prime", to_json(b.n_minus_prime)},
              {"m_plus_n", to_json(b.m_plus_n)},
              {"n_alpha", to_json(b.n_alpha)}};
}

inline SearchBounds bounds_from_json(const Json& j) {
  SearchBounds b;
  if (!j.is_object()) throw InputError("bounds: expected an object");
  if (j.contains("n")) b.n_minus = range_from(j.at("n"), "bounds.n");
  if (j.contains("n_prime")) b.n_minus_prime = range_from(j.at("n_prime"), "bounds.n_prime");
  if (j.contains("m_plus_n")) b.m_plus_n = range_from(j.at("m_plus_n"), "bounds.m_plus_n");
  if (j.contains("n_alpha")) b.n_alpha = range_from(j.at("n_alpha"), "bounds.n_alpha");
  return b;
}

struct SynthesisJob {
  SynthesisProblem problem;
  GateTarget target;
};

inline Json to_json(const SynthesisJob& job) {
  Json j{{"format_version", kFormatVersion},
         {"h", job.problem.h},
         {"J", job.problem.J},
         {"Jp", job.problem.Jp},
         {"target", Json{{"h", job.target.h}, {"j", job.target.j}}}};
  if (job.problem.alpha_diag) j["alpha_diag"] = *job.problem.alpha_diag;
  j["bounds"] = to_json(job.problem.bounds);
  j["tolerance"] = job.problem.tolerance;
  return j;
}

inline SynthesisJob synthesis_job_from_json(const Json& j) {
  const std::string what = "SynthesisProblem";
  check_format_version(j, what);
  SynthesisJob job;
  job.problem.h = int_from(require_key(j, "h", what), what + ".h");
  job.problem.J = vec3_from(require_key(j, "J", what), what + ".J");
  job.problem.Jp = vec3_from(require_key(j, "Jp", what), what + ".Jp");
  int tj = 2;
  int th = job.problem.h;
  if (j.contains("target")) {
    const Json& t = j.at("target");
    if (t.contains("h")) th = int_from(t.at("h"), what + ".target.h");
    tj = int_from(require_key(t, "j", what + ".target"), what + ".target.j");
  }
  job.target = gate_library(th, tj);
  if (j.contains("alpha_diag")) job.problem.alpha_diag = int_from(j.at("alpha_diag"), what + ".alpha_diag");
  if (j.contains("bounds")) job.problem.bounds = bounds_from_json(j.at("bounds"));
  if (j.contains("tolerance")) job.problem.tolerance = number_from(j.at("tolerance"), what + ".tolerance");
  validate(job.problem, job.target);
  return job;
}

inline Json to_json(const Pulse& p) {
  return Json{{"config", to_json(p.config)}, {"duration", p.duration}};
}

inline Json to_json(const PulseSequence& s) {
  return Json{{"h", s.h},
              {"alpha", s.alpha},
              {"xi", s.xi},
              {"chi", s.chi},
              {"integers",
               Json{{"n_minus_alpha", s.integers.n_minus},
                    {"n_prime_minus_alpha", s.integers.n_minus_prime},
                    {"m_alpha", s.integers.m_alpha},
                    {"n_alpha", s.integers.n_alpha},
                    {"s", s.integers.s}}},
              {"sign_term", s.sign_term},
              {"first", to_json(s.first)},
              {"second", to_json(s.second)},
              {"total_time", s.total_time()}};
}

inline Json to_json(const SynthesisReport& r) {
  Json j{{"feasible", r.feasible}};
  j["sequence"] = r.sequence ? to_json(*r.sequence) : Json(nullptr);
  j["residual"] = r.feasible ? Json(r.residual) : Json(nullptr);
  j["exact_distance"] = r.feasible ? Json(r.exact_distance) : Json(nullptr);
  j["candidates_examined"] = r.candidates_examined;
  j["verified_candidates"] = r.verified_candidates;
  Json hist = Json::object();
  for (const auto& [reason, count] : r.rejections) hist[reason] = count;
  j["rejections"] = hist;
  if (r.feasible) {
    j["diag_block"] = matrix_to_json(r.diag_block);
    j["anti_block"] = matrix_to_json(r.anti_block);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Teleportation

inline MeasurementBasis basis_from(const std::string& s) {
  if (s == "bell") return MeasurementBasis::bell;
  if (s == "computational") return MeasurementBasis::computational;
  throw InputError("basis must be 'bell' or 'computational', got '" + s + "'");
}

inline SamplingMode mode_from(const std::string& s) {
  if (s == "enumerate" || s == "enumerate_all") return SamplingMode::enumerate_all;
  if (s == "sample") return SamplingMode::sample;
  throw InputError("mode must be 'enumerate' or 'sample', got '" + s + "'");
}

inline CorrectionSource correction_from(const std::string& s) {
  if (s == "table1") return CorrectionSource::table1;
  if (s == "general_formula") return CorrectionSource::general_formula;
  if (s == "brute_force") return CorrectionSource::brute_force;
  throw InputError("correction must be 'table1', 'general_formula' or 'brute_force'");
}

inline std::string string_from(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

inline BellLabel ancilla_from(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + ": expected [A, B]");
  BellLabel l{int_from(j[0], what), int_from(j[1], what)};
  validate(l);
  return l;
}

inline GateTarget gate_from(const Json& j, const std::string& what) {
  return gate_library(int_from(require_key(j, "h", what), what + ".h"),
                      int_from(require_key(j, "j", what), what + ".j"));
}

inline Json to_json(const WirePlan& w) {
  return Json{{"gate", Json{{"h", w.gate.h}, {"j", w.gate.j}}},
              {"ancilla", Json::array({w.ancilla.first, w.ancilla.second})},
              {"basis", to_string(w.basis)}};
}

/// A teleport run: single-qubit config, or a multi-wire plan when "wires" is present.
struct TeleportJob {
  TeleportConfig config;
  std::optional<MultiQubitPlan> plan;
  std::optional<ComplexVector> amplitudes;  // input state; random from the seed when absent
};

inline Json to_json(const TeleportJob& job) {
  Json j{{"format_version", kFormatVersion}};
  if (job.plan) {
    Json wires = Json::array();
    for (const auto& w : job.plan->wires) wires.push_back(to_json(w));
    j["wires"] = wires;
    j["correction"] = to_string(job.plan->correction);
  } else {
    j["gate"] = Json{{"h", job.config.gate.h}, {"j", job.config.gate.j}};
    j["ancilla"] = Json::array({job.config.ancilla.first, job.config.ancilla.second});
    j["basis"] = to_string(job.config.basis);
    j["correction"] = to_string(job.config.correction);
  }
  j["mode"] = to_string(job.config.mode);
  j["seed"] = job.config.seed;
  j["amplitudes"] = job.amplitudes ? vector_to_json(*job.amplitudes) : Json(nullptr);
  return j;
}

inline TeleportJob teleport_job_from_json(const Json& j) {
  const std::string what = "TeleportConfig";
  if (!j.is_object()) throw InputError(what + ": expected an object");
  check_format_version(j, what);
  TeleportJob job;
  if (j.contains("mode")) job.config.mode = mode_from(string_from(j.at("mode"), what + ".mode"));
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw InputError(what + ".seed: expected a non-negative integer");
    job.config.seed = s.get<std::uint64_t>();
  }
  CorrectionSource source = CorrectionSource::brute_force;
  if (j.contains("correction")) source = correction_from(string_from(j.at("correction"), what + ".correction"));
  job.config.correction = source;
  if (j.contains("wires")) {
    const Json& wires = j.at("wires");
    if (!wires.is_array() || wires.empty()) throw InputError(what + ".wires: expected a non-empty list");
    MultiQubitPlan plan;
    plan.correction = source;
    for (const Json& w : wires) {
      WirePlan wp;
      if (w.contains("gate")) wp.gate = gate_from(w.at("gate"), what + ".wires.gate");
      if (w.contains("ancilla")) wp.ancilla = ancilla_from(w.at("ancilla"), what + ".wires.ancilla");
      if (w.contains("basis")) wp.basis = basis_from(string_from(w.at("basis"), what + ".wires.basis"));
      plan.wires.push_back(wp);
    }
    if (static_cast<int>(plan.wires.size()) > kMaxTeleportWires) {
      throw DimensionError(what + ".wires: at most 4 wires");
    }
    job.plan = plan;
  } else {
    if (j.contains("gate")) job.config.gate = gate_from(j.at("gate"), what + ".gate");
    if (j.contains("ancilla")) job.config.ancilla = ancilla_from(j.at("ancilla"), what + ".ancilla");
    if (j.contains("basis")) job.config.basis = basis_from(string_from(j.at("basis"), what + ".basis"));
  }
  if (j.contains("amplitudes") && !j.at("amplitudes").is_null()) {
    const Json& a = j.at("amplitudes");
    if (!a.is_array()) throw InputError(what + ".amplitudes: expected a list");
    ComplexVector v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = complex_from(a[i], what + ".amplitudes");
    }
    const std::size_t wires = job.plan ? job.plan->wires.size() : 1;
    if (v.size() != (Eigen::Index{1} << wires)) {
      throw DimensionError(what + ".amplitudes: length must be 2^wires");
    }
    job.amplitudes = v;
  }
  return job;
}

inline Json to_json(const CorrectionPlan& p) {
  Json gates = Json::array();
  for (const auto& g : p.gates) gates.push_back(g);
  return Json{{"a", p.a},
              {"b", p.b},
              {"hadamard", p.hadamard},
              {"source", to_string(p.source)},
              {"gates", gates},
              {"label", p.label()}};
}

inline Json to_json(const TeleportOutcome& o) {
  const std::string bits = std::to_string(o.record.m1) + std::to_string(o.record.m2);
  return Json{{"outcome", bits},
              {"probability", o.record.probability},
              {"reachable", o.reachable},
              {"correction", to_json(o.correction)},
              {"fidelity", o.fidelity},
              {"output_state", vector_to_json(o.output)}};
}

inline Json to_json(const MultiQubitSummary& s) {
  Json layout = Json::array();
  for (const auto& w : s.layout) {
    layout.push_back(Json{{"wire", w.wire},
                          {"input_qubit", w.input_qubit},
                          {"sender_qubit", w.sender_qubit},
                          {"receiver_qubit", w.receiver_qubit}});
  }
  Json branches = Json::array();
  for (const auto& b : s.branches) {
    std::string bits;
    Json corrections = Json::array();
    for (std::size_t w = 0; w < b.outcomes.size(); ++w) {
      bits += (w ? "," : "") + std::to_string(b.outcomes[w][0]) + std::to_string(b.outcomes[w][1]);
      corrections.push_back(b.corrections[w].label());
    }
    branches.push_back(Json{{"outcomes", bits},
                            {"probability", b.probability},
                            {"corrections", corrections},
                            {"fidelity", b.fidelity}});
  }
  return Json{{"n", s.n},
              {"layout", layout},
              {"branch_count", s.branches.size()},
              {"total_probability", s.total_probability},
              {"min_fidelity", s.min_fidelity},
              {"success", s.success},
              {"branches", branches}};
}

// ---------------------------------------------------------------------------
// Reports

inline Json manifest(const std::string& command, Json config, std::optional<std::uint64_t> seed,
                     const std::string& tool_version, Json tolerances) {
  return Json{{"command", command},
              {"config", std::move(config)},
              {"seed", seed ? Json(*seed) : Json(nullptr)},
              {"tool_version", tool_version},
              {"tolerances", std::move(tolerances)},
              {"format_version", kFormatVersion}};
}

}  // namespace isingtel::json_io
