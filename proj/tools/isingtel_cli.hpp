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

// Command-line front end. run_cli() takes the argument list (without the
// program name) and two streams so tests can drive it in-process.
//
// Exit codes: 0 success, 1 negative result, 2 input error.

#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isingtel/isingtel.hpp"

namespace isingtel::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;

using json_io::Json;

/// "n=0:4,np=0:4,k=-8:8,na=-8:8"; omitted keys keep their defaults.
/// k bounds m_alpha + n_alpha.
inline SearchBounds parse_bounds(const std::string& spec, SearchBounds base = {}) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw InputError("--bounds: expected key=lo:hi, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    IntRange r;
    try {
      std::size_t used = 0;
      const std::string lo = item.substr(eq + 1, colon - eq - 1);
      const std::string hi = item.substr(colon + 1);
      r.lo = std::stoi(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(lo);
      r.hi = std::stoi(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
    } catch (const std::logic_error&) {
      throw InputError("--bounds: bad integer range in '" + item + "'");
    }
    if (key == "n") {
      base.n_minus = r;
    } else if (key == "np") {
      base.n_minus_prime = r;
    } else if (key == "k") {
      base.m_plus_n = r;
    } else if (key == "na") {
      base.n_alpha = r;
    } else {
      throw InputError("--bounds: unknown key '" + key + "' (use n, np, k, na)");
    }
  }
  return base;
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
};

// ---------------------------------------------------------------------------
// evolve

struct EvolveArgs {
  std::string config;
  std::optional<double> t;
  std::optional<int> h;
  double tol = kCrossValidationTolerance;
};

inline int cmd_evolve(const EvolveArgs& args, const Emitter& emit) {
  Json cfg_json = json_io::read_file(args.config);
  if (args.h) cfg_json["h"] = *args.h;
  const CouplingConfig cfg = json_io::coupling_from_json(cfg_json);
  double t = 1.0;
  if (cfg_json.contains("t")) t = json_io::number_from(cfg_json.at("t"), "t");
  if (args.t) t = *args.t;
  if (!std::isfinite(t)) throw InputError("--t must be finite");

  const EvolutionOperator closed = evolution_closed_form(cfg, t);
  const EvolutionOperator oracle = evolution_oracle(cfg, t);
  const double distance = (closed.matrix - oracle.matrix).norm();
  const bool pass = distance < args.tol;

  Json config = json_io::to_json(cfg);
  config["t"] = t;
  Json report{{"manifest", json_io::manifest("evolve", config, std::nullopt, kToolVersion,
                                             Json{{"cross_validation", args.tol}})}};
  report["closed_form"] = json_io::matrix_to_json(closed.matrix);
  report["oracle"] = json_io::matrix_to_json(oracle.matrix);
  report["frobenius_distance"] = distance;
  report["in_subgroup"] = in_subgroup(cfg.h, closed.matrix);
  report["pass"] = pass;
  emit.write(json_io::dump(report));
  return pass ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string config;
  std::optional<int> h;
  std::optional<int> j;
  std::optional<std::string> bounds;
  std::optional<double> tol;
};

inline int cmd_synth(const SynthArgs& args, const Emitter& emit) {
  Json problem_json = json_io::read_file(args.config);
  if (args.h) {
    problem_json["h"] = *args.h;
    if (problem_json.contains("target")) problem_json["target"]["h"] = *args.h;
  }
  if (args.j) problem_json["target"]["j"] = *args.j;
  if (args.tol) problem_json["tolerance"] = *args.tol;
  if (args.bounds) {
    SearchBounds base;
    if (problem_json.contains("bounds")) base = json_io::bounds_from_json(problem_json.at("bounds"));
    problem_json["bounds"] = json_io::to_json(parse_bounds(*args.bounds, base));
  }
  const json_io::SynthesisJob job = json_io::synthesis_job_from_json(problem_json);
  const SynthesisReport rep = solve_two_pulse(job.problem, job.target);

  Json report{{"manifest", json_io::manifest("synth", json_io::to_json(job), std::nullopt,
                                             kToolVersion,
                                             Json{{"synthesis", job.problem.tolerance}})}};
  report["target"] = Json{{"h", job.target.h},
                          {"j", job.target.j},
                          {"matrix", json_io::matrix_to_json(job.target.matrix)}};
  report["report"] = json_io::to_json(rep);
  emit.write(json_io::dump(report));
  return rep.feasible ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// teleport

struct TeleportArgs {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  double tol = kTeleportTolerance;
};

inline int cmd_teleport(const TeleportArgs& args, const Emitter& emit) {
  Json cfg_json = args.config ? json_io::read_file(*args.config) : Json::object();
  if (args.seed) cfg_json["seed"] = *args.seed;
  if (args.mode) cfg_json["mode"] = *args.mode;
  json_io::TeleportJob job = json_io::teleport_job_from_json(cfg_json);

  const int wires = job.plan ? static_cast<int>(job.plan->wires.size()) : 1;
  if (!job.amplitudes) {
    Rng rng(job.config.seed);
    job.amplitudes = random_state(wires, rng).amplitudes();
  }
  const StateVector input(wires, *job.amplitudes);
  if (std::abs(input.norm() - 1.0) > 1e-12) throw InputError("teleport: input amplitudes must be normalized");

  Json report{{"manifest", json_io::manifest("teleport", json_io::to_json(job), job.config.seed,
                                             kToolVersion, Json{{"fidelity", args.tol}})}};
  bool pass = true;
  if (job.plan) {
    if (job.config.mode == SamplingMode::sample) {
      throw InputError("teleport: sample mode is only available for single-qubit runs");
    }
    const MultiQubitSummary summary = run_multiqubit(input, *job.plan, args.tol);
    report["multiqubit"] = json_io::to_json(summary);
    pass = summary.success;
  } else {
    const auto outcomes = run_single(job.config, input[0], input[1]);
    Json branches = Json::array();
    double min_fid = 1.0;
    double total = 0.0;
    for (const auto& o : outcomes) {
      branches.push_back(json_io::to_json(o));
      min_fid = std::min(min_fid, o.fidelity);
      total += o.record.probability;
      if (o.reachable && o.fidelity <= 1.0 - args.tol) pass = false;
    }
    report["branches"] = branches;
    report["branch_count"] = outcomes.size();
    report["total_probability"] = total;
    report["min_fidelity"] = min_fid;
    report["success"] = pass;
  }
  emit.write(json_io::dump(report));
  return pass ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// table1

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << "basis,measurement,teleported_state,correction,tabulated_correction,min_fidelity,match\n";
  for (const auto& r : rows) {
    os << to_string(r.basis) << ',' << csv_field(r.measurement) << ','
       << csv_field(r.teleported_state) << ',' << csv_field(r.correction) << ','
       << csv_field(r.printed_correction) << ',' << std::setprecision(17) << r.min_fidelity << ','
       << (r.matches() ? "yes" : "no") << '\n';
  }
  return os.str();
}

inline int cmd_table1(std::uint64_t seed, const Emitter& emit) {
  const auto rows = regenerate_table1(50, seed);
  emit.write(table1_csv(rows));
  for (const auto& r : rows) {
    if (!r.matches() || r.min_fidelity <= 1.0 - 1e-12) return kExitNegative;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;
  std::vector<std::string> notes;
  bool ok() const { return total > 0 && passed == total; }
};

/// Stock coupling pairs (first pulse, second pulse) shared by the synthesis suite.
inline const std::vector<std::pair<Vec3, Vec3>>& stock_couplings() {
  static const std::vector<std::pair<Vec3, Vec3>> pairs{
      {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}},
      {{1.0, 2.5, 0.7}, {0.8, 1.9, 1.3}},
      {{-1.3, 0.4, 2.2}, {2.0, -1.1, 0.6}},
  };
  return pairs;
}

inline SuiteResult verify_closed_form(std::uint64_t seed, double tol) {
  SuiteResult r;
  r.name = "closed_form";
  Rng rng(seed);
  for (int h = 1; h <= 3; ++h) {
    for (int k = 0; k < 1000; ++k) {
      const CouplingConfig cfg = random_coupling(h, rng);
      const double t = rng.uniform(-5.0, 5.0);
      const double d = (evolution_closed_form(cfg, t).matrix - evolution_oracle(cfg, t).matrix).norm();
      ++r.total;
      if (d < tol) ++r.passed;
    }
  }
  return r;
}

/// Per random case: shape membership, determinant phase of both blocks,
/// same-config closure and semigroup law, and pattern stability of a product
/// with a different same-h config.
inline SuiteResult verify_blocks(std::uint64_t seed, double tol) {
  SuiteResult r;
  r.name = "blocks";
  Rng rng(seed);
  for (int h = 1; h <= 3; ++h) {
    for (int k = 0; k < 200; ++k) {
      const CouplingConfig c1 = random_coupling(h, rng);
      const CouplingConfig c2 = random_coupling(h, rng);
      const double t1 = rng.uniform(-5.0, 5.0);
      const double t2 = rng.uniform(-5.0, 5.0);
      const EvolutionOperator u = evolution_closed_form(c1, t1);
      const EvolutionOperator u2 = evolution_closed_form(c1, t2);
      const EvolutionOperator v = evolution_closed_form(c2, t2);

      bool ok = in_subgroup(h, u.matrix, tol) && subgroup_closure_check(u2, u, tol);
      ok = ok && (compose(u2, u).matrix - evolution_closed_form(c1, t1 + t2).matrix).norm() < tol;
      ok = ok && off_pattern_magnitude(h, u.matrix * v.matrix) < tol;
      const ReducedQuantities rq = reduced_quantities(c1, t1);
      const auto [b1, b2] = extract_blocks(u, tol);
      for (const BlockPair* b : {&b1, &b2}) {
        const Complex expected = std::exp(Complex(0.0, 2.0 * rq.delta(b->alpha, +1)));
        ok = ok && std::abs(b->block.determinant() - expected) < tol;
      }
      ++r.total;
      if (ok) ++r.passed;
    }
  }
  return r;
}

inline SuiteResult verify_synthesis(double tol) {
  SuiteResult r;
  r.name = "synthesis";
  for (int h = 1; h <= 3; ++h) {
    for (int j = 1; j <= 2; ++j) {
      for (const auto& [J, Jp] : stock_couplings()) {
        SynthesisProblem p;
        p.h = h;
        p.J = J;
        p.Jp = Jp;
        p.tolerance = tol;
        const GateTarget target = gate_library(h, j);
        const SynthesisReport rep = solve_two_pulse(p, target);
        ++r.total;
        if (rep.feasible && rep.residual < tol) {
          ++r.passed;
        } else {
          r.notes.push_back("h=" + std::to_string(h) + " j=" + std::to_string(j) + " infeasible");
        }
      }
    }
  }
  return r;
}

inline SuiteResult verify_corrections() {
  SuiteResult r;
  r.name = "corrections";
  std::uint64_t agree = 0;
  std::vector<CorrectionAuditRow> rows;
  try {
    rows = audit_correction_formula();
  } catch (const ProtocolBreakage& e) {
    r.total = 96;
    r.notes.emplace_back(e.what());
    return r;
  }
  for (const auto& row : rows) {
    ++r.total;
    ++r.passed;  // brute force found a correction
    if (row.agree) {
      ++agree;
    } else {
      std::ostringstream os;
      os << "formula disagrees: h=" << row.h << " j=" << row.j << " A=" << row.A << " B=" << row.B
         << " M1=" << row.m1 << " M2=" << row.m2 << " formula(a,b)=(" << row.formula.a << ","
         << row.formula.b << ") oracle(a,b)=(" << row.brute.a << "," << row.brute.b << ")";
      r.notes.push_back(os.str());
    }
  }
  r.notes.insert(r.notes.begin(), "printed formula agrees on " + std::to_string(agree) + "/" +
                                      std::to_string(rows.size()) + " tuples");
  return r;
}

inline SuiteResult verify_table1(std::uint64_t seed) {
  SuiteResult r;
  r.name = "table1";
  for (const auto& row : regenerate_table1(50, seed)) {
    ++r.total;
    if (row.matches() && row.min_fidelity > 1.0 - 1e-12) {
      ++r.passed;
    } else {
      r.notes.push_back("row " + row.measurement + " not reproduced: " + row.correction + " vs " +
                        row.printed_correction);
    }
  }
  return r;
}

inline int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<double> tol,
                      const Emitter& emit) {
  SuiteResult r;
  if (suite == "closed_form") {
    r = verify_closed_form(seed, tol.value_or(kCrossValidationTolerance));
  } else if (suite == "blocks") {
    r = verify_blocks(seed, tol.value_or(kStructuralTolerance));
  } else if (suite == "synthesis") {
    r = verify_synthesis(tol.value_or(kSynthesisTolerance));
  } else if (suite == "corrections") {
    r = verify_corrections();
  } else if (suite == "table1") {
    r = verify_table1(seed);
  } else {
    throw InputError("verify: unknown suite '" + suite +
                     "' (closed_form, blocks, synthesis, corrections, table1)");
  }
  std::ostringstream os;
  os << r.name << ": " << r.passed << "/" << r.total << " " << (r.ok() ? "PASS" : "FAIL") << "\n";
  for (const auto& note : r.notes) os << "  " << note << "\n";
  emit.write(os.str());
  return r.ok() ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ising-gate evolution, pulse synthesis and teleportation", "isingtel-cli"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write the report to this path instead of stdout");
    sub->add_option("--tol", tol, "Override the default tolerance");
  };

  EvolveArgs evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "Closed-form vs dense evolution operator");
  evolve_cmd->add_option("--config", evolve.config, "CouplingConfig JSON")->required();
  evolve_cmd->add_option("--t", evolve.t, "Evolution time (overrides the config's t)");
  evolve_cmd->add_option("--h", evolve.h, "Field direction (overrides the config's h)");
  add_common(evolve_cmd);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Two-pulse synthesis of a library gate");
  synth_cmd->add_option("--config", synth.config, "SynthesisProblem JSON")->required();
  synth_cmd->add_option("--h", synth.h, "Target direction");
  synth_cmd->add_option("--j", synth.j, "Target block label");
  synth_cmd->add_option("--bounds", synth.bounds, "Integer search box, e.g. n=0:4,np=0:4,k=-8:8,na=-8:8");
  add_common(synth_cmd);

  TeleportArgs tele;
  auto* tele_cmd = app.add_subcommand("teleport", "Run the teleportation protocol");
  tele_cmd->add_option("--config", tele.config, "TeleportConfig JSON (defaults when omitted)");
  tele_cmd->add_option("--seed", seed, "Seed for random input and sampling");
  tele_cmd->add_option("--mode", tele.mode, "enumerate | sample");
  add_common(tele_cmd);

  auto* table_cmd = app.add_subcommand("table1", "Regenerate the measurement/correction table as CSV");
  table_cmd->add_option("--seed", seed, "Seed for the random fidelity inputs");
  table_cmd->add_option("--out", out_path, "Write the CSV to this path instead of stdout");

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant battery");
  verify_cmd->add_option("suite", suite, "closed_form | blocks | synthesis | corrections | table1")
      ->required();
  verify_cmd->add_option("--seed", seed, "Seed for random batteries");
  add_common(verify_cmd);

  std::vector<std::string> argv_store{"isingtel-cli"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  const Emitter emit{out, out_path};
  try {
    if (*evolve_cmd) {
      if (tol) evolve.tol = *tol;
      return cmd_evolve(evolve, emit);
    }
    if (*synth_cmd) {
      synth.tol = tol;
      return cmd_synth(synth, emit);
    }
    if (*tele_cmd) {
      tele.seed = seed;
      if (tol) tele.tol = *tol;
      return cmd_teleport(tele, emit);
    }
    if (*table_cmd) return cmd_table1(seed.value_or(1), emit);
    return cmd_verify(suite, seed.value_or(20261018), tol, emit);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ProtocolBreakage& e) {
    err << "protocol breakage: " << e.what() << "\n";
    return kExitNegative;
  } catch (const PatternViolation& e) {
    err << "pattern violation: " << e.what() << "\n";
    return kExitNegative;
  }
}

}  // namespace isingtel::cli
