// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hqc: command-line front end for the gate protocols, the two-eigenspace
// construction, the subsystem combination, duration sweeps and the Berry
// loop check.
//
// Exit status: 0 all tolerances met, 1 a tolerance or numerical check
// failed, 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hqc/hqc.hpp"

namespace {

using namespace hqc;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// ---------------------------------------------------------------------------
// Formatting

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

std::string fmt(cplx z) {
  auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << std::showpos << clean(z.real()) << clean(z.imag()) << "i";
  return os.str();
}

// Phases in (-pi, pi], with round-off below -pi + 1e-9 shown as pi.
std::string fmt_phase(double a) {
  a = wrap_phase(a);
  if (a < -std::numbers::pi + 1e-9) a += 2 * std::numbers::pi;
  return fmt(a, 9);
}

void print_matrix(std::ostream& os, const std::string& label, const Matrix& m, const std::string& indent = "  ") {
  os << indent << label << ":\n";
  for (Index r = 0; r < m.rows(); ++r) {
    os << indent << "  [";
    for (Index c = 0; c < m.cols(); ++c) os << (c ? "  " : "") << fmt(m(r, c));
    os << "]\n";
  }
}

void print_check(std::ostream& os, const std::string& metric, double value, const std::string& rel, double bound,
                 bool ok) {
  os << "  " << std::left << std::setw(26) << metric << std::right << std::setw(14) << fmt(value, 6) << "  " << rel
     << " " << fmt(bound, 3) << "  " << (ok ? "ok" : "FAIL") << "\n";
}

// ---------------------------------------------------------------------------
// Shared option handling

struct Numerics {
  std::optional<double> T;
  std::optional<int> steps;
  std::optional<int> samples;
  std::optional<std::string> mode;
  std::optional<std::string> schedule;
  std::string config;
};

void add_numerics(CLI::App* cmd, Numerics& n, bool single_run = true) {
  if (single_run) cmd->add_option("--T", n.T, "Total loop duration")->check(CLI::PositiveNumber);
  cmd->add_option("--steps", n.steps, "Integrator steps per segment")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", n.samples, "Frame-tracking samples per loop")->check(CLI::Range(2, 10000000));
  if (single_run) cmd->add_option("--mode", n.mode, "exact | dynamical")->check(CLI::IsMember({"exact", "dynamical"}));
  cmd->add_option("--schedule", n.schedule, "linear | cosine")->check(CLI::IsMember({"linear", "cosine"}));
  cmd->add_option("--config", n.config, "Flat key = value config file")->check(CLI::ExistingFile);
}

const std::set<std::string> kNumericKeys{"T", "steps", "samples", "leakage_tolerance", "residual_tolerance"};
const std::set<std::string> kWordKeys{"mode", "schedule"};

ExperimentConfig load_config(const Numerics& n, std::set<std::string> numeric, bool allow_path) {
  if (n.config.empty()) return {};
  numeric.insert(kNumericKeys.begin(), kNumericKeys.end());
  return interpret_config(read_config_file(n.config), numeric, kWordKeys, allow_path);
}

// Flag beats config beats default.
struct Resolved {
  double T;
  int steps;
  int samples;
  RunMode mode;
  Schedule schedule;
};

Resolved resolve(const Numerics& n, const ExperimentConfig& cfg, double t_default) {
  auto as_int = [](double v, const char* key) {
    if (v != std::floor(v) || v > 1e9) throw ConfigError(std::string("config: '") + key + "' must be an integer");
    return static_cast<int>(v);
  };
  Resolved r;
  r.T = n.T.value_or(cfg.number("T").value_or(t_default));
  r.steps = n.steps ? *n.steps : as_int(cfg.number("steps").value_or(2000), "steps");
  r.samples = n.samples ? *n.samples : as_int(cfg.number("samples").value_or(4000), "samples");
  if (r.samples < 2) throw ConfigError("config: 'samples' must be at least 2");
  const std::string mode = n.mode.value_or(cfg.word("mode").value_or("exact"));
  if (mode != "exact" && mode != "dynamical") throw ConfigError("config: 'mode' must be exact or dynamical");
  r.mode = mode == "exact" ? RunMode::exact : RunMode::dynamical;
  r.schedule = parse_schedule(n.schedule.value_or(cfg.word("schedule").value_or("cosine")));
  return r;
}

std::optional<ProtocolKind> protocol_kind(const std::string& name) {
  if (name == "hadamard") return ProtocolKind::hadamard_type;
  if (name == "t") return ProtocolKind::t_type;
  if (name == "cnot") return ProtocolKind::cnot_type;
  return std::nullopt;
}

// Named protocol, or a config loop ("custom") based at X on the last qubit.
GateProtocol make_protocol(const std::string& name, const ExperimentConfig& cfg, const Resolved& r,
                           const std::string& variant) {
  if (auto kind = protocol_kind(name)) {
    if (!cfg.path.empty()) throw ConfigError("config: 'path' is only read for the custom protocol");
    if (*kind == ProtocolKind::cnot_type) {
      return build_two_qubit_protocol(r.T, r.schedule, {3, 2, 1, 3},
                                      variant == "s" ? CnotVariant::s : CnotVariant::s_dagger);
    }
    return build_single_qubit_protocol(*kind, r.T, r.schedule);
  }
  if (name != "custom") throw ConfigError("unknown protocol '" + name + "' (expected hadamard, t, cnot or custom)");
  const auto q = cfg.number("qubits");
  if (!q || *q != std::floor(*q) || *q < 2 || *q > 6) throw ConfigError("config: custom protocol needs 'qubits' in 2..6");
  const int n = static_cast<int>(*q);
  GateProtocol p{ProtocolKind::hadamard_type, {n, 1, 0, n}, build_config_path(cfg, n, r.T, r.schedule),
                 UnitaryOperator::identity(Index{1} << (n - 1))};
  try {
    validate_protocol(p);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return p;
}

// ---------------------------------------------------------------------------
// gate

struct GateArgs {
  std::string name;
  std::string variant = "s_dagger";
  std::string csv;
  Numerics num;
};

int cmd_gate(const GateArgs& a) {
  const ExperimentConfig cfg = load_config(a.num, {"qubits"}, true);
  const Resolved r = resolve(a.num, cfg, 400.0);
  const GateProtocol p = make_protocol(a.name, cfg, r, a.variant);
  const bool custom = a.name == "custom";
  const bool exact = r.mode == RunMode::exact;
  const double res_tol = cfg.number("residual_tolerance").value_or(exact ? 1e-6 : 1e-3);
  const double fid_tol = exact ? 1e-6 : 1e-3;
  const double leak_tol = cfg.number("leakage_tolerance").value_or(1e-2);

  RunOptions o;
  o.mode = r.mode;
  o.total_duration = r.T;
  o.steps_per_segment = r.steps;
  o.samples = r.samples;
  o.residual_tolerance = std::numeric_limits<double>::infinity();
  o.leakage_tolerance = std::numeric_limits<double>::infinity();
  const GateRunReport rep = run_gate_protocol(p, o);

  std::cout << "gate " << a.name << "  mode " << to_string(r.mode) << "  T " << fmt(r.T) << "  samples " << r.samples;
  if (!exact) std::cout << "  steps/segment " << r.steps;
  std::cout << "\n";
  if (!custom) print_matrix(std::cout, "target system gate", p.target_system_gate.matrix());
  print_matrix(std::cout, "system factor", rep.system_factor());
  print_matrix(std::cout, "gauge factor", rep.gauge_factor());
  for (std::size_t n = 0; n < rep.levels.levels.size(); ++n) {
    const auto& l = rep.levels.levels[n];
    print_matrix(std::cout, "level " + std::to_string(n) + " (E = " + fmt(l.energy, 4) + ") geometric block", l.geometric);
  }

  std::cout << "checks:\n";
  bool ok = true;
  auto check_le = [&](const std::string& m, double v, double b) {
    const bool pass = v <= b;
    print_check(std::cout, m, v, "<=", b, pass);
    ok = ok && pass;
  };
  if (!custom) check_le("1 - system fidelity", 1.0 - rep.system_fidelity, fid_tol);
  check_le("factorization residual", rep.factorization.residual, res_tol);
  check_le("equal blocks deviation", rep.equal_blocks_deviation, exact ? 1e-6 : 1e-2);
  if (!exact) {
    check_le("leakage", rep.leakage, leak_tol);
    std::cout << "  step error estimate       " << fmt(rep.step_error_estimate) << "\n";
  }

  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw ConfigError("cannot write " + a.csv);
    f << std::setprecision(12) << "protocol,mode,T,system_fidelity,factorization_residual,leakage\n"
      << a.name << ',' << to_string(r.mode) << ',' << r.T << ',' << rep.system_fidelity << ','
      << rep.factorization.residual << ',' << rep.leakage << '\n';
  }
  if (!ok) std::cout << "result: FAIL\n";
  return ok ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// lemma

struct LemmaArgs {
  std::string demo = "gauge";
  Numerics num;
};

int cmd_lemma(const LemmaArgs& a) {
  const ExperimentConfig cfg = load_config(a.num, {"qubits", "ground_dim"}, true);
  const Resolved r = resolve(a.num, cfg, 400.0);
  HamiltonianPath loop = build_single_qubit_protocol(ProtocolKind::hadamard_type, r.T, r.schedule).loop;
  Index ground = 2;
  std::string label = "gauge-qubit loop (4-dim, d1 = d2 = 2)";
  if (!cfg.path.empty()) {
    const auto q = cfg.number("qubits");
    const auto g = cfg.number("ground_dim");
    if (!q || *q != std::floor(*q) || *q > 6) throw ConfigError("config: lemma loop needs integer 'qubits' in 1..6");
    if (!g || *g != std::floor(*g)) throw ConfigError("config: lemma loop needs integer 'ground_dim'");
    loop = build_config_path(cfg, static_cast<int>(*q), r.T, r.schedule);
    ground = static_cast<Index>(*g);
    label = "config loop";
  } else if (a.demo == "scalar") {
    const auto z = pauli_string(1, {{1, pauli::Z()}});
    const auto x = pauli_string(1, {{1, pauli::X()}});
    const auto y = pauli_string(1, {{1, pauli::Y()}});
    const double each = r.T / 3.0;
    loop = HamiltonianPath(std::vector<PathSegment>{segment(z, x, r.schedule, each), segment(x, y, r.schedule, each),
                                                    segment(y, z, r.schedule, each)});
    ground = 1;
    label = "single-qubit loop Z -> X -> Y -> Z (d1 = d2 = 1)";
  } else if (a.demo != "gauge") {
    throw ConfigError("unknown lemma demo '" + a.demo + "'");
  }

  LemmaOptions o;
  o.mode = r.mode;
  o.round_duration = r.T;
  o.steps_per_segment = r.steps;
  o.samples = r.samples;
  o.leakage_tolerance = cfg.number("leakage_tolerance").value_or(1e-2);
  LemmaReport rep;
  try {
    rep = lemma_execute(loop, ground, o);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }

  std::cout << "lemma: " << label << "  mode " << to_string(r.mode) << "\n";
  print_matrix(std::cout, "ground holonomy of the base loop (root of W1)", rep.root);
  print_matrix(std::cout, "excited holonomy W2", rep.w2);
  std::cout << "  W2 eigenphases:";
  for (Index j = 0; j < rep.alphas.size(); ++j) std::cout << " " << fmt(rep.alphas(j));
  std::cout << "\n";
  for (std::size_t k = 0; k < rep.rounds.size(); ++k) {
    std::cout << "round " << k << (r.mode == RunMode::dynamical ? "  leakage " + fmt(rep.rounds[k].leakage) : "") << "\n";
    print_matrix(std::cout, "ground", rep.rounds[k].ground, "    ");
    print_matrix(std::cout, "excited", rep.rounds[k].excited, "    ");
  }
  print_matrix(std::cout, "net ground", rep.net_ground);
  print_matrix(std::cout, "net excited", rep.net_excited);
  std::cout << "  excited phase " << fmt(rep.excited_phase) << " (sum of eigenphases " << fmt(rep.predicted_excited_phase)
            << ")\n";

  const double tol = r.mode == RunMode::exact ? 1e-6 : 1e-3;
  std::cout << "checks:\n";
  const bool dev_ok = rep.excited_deviation <= tol;
  const bool gf_ok = 1.0 - rep.ground_fidelity <= tol;
  const bool or_ok = rep.oracle_deviation <= tol;
  print_check(std::cout, "excited deviation", rep.excited_deviation, "<=", tol, dev_ok);
  print_check(std::cout, "1 - ground fidelity vs W1", 1.0 - rep.ground_fidelity, "<=", tol, gf_ok);
  print_check(std::cout, "product oracle deviation", rep.oracle_deviation, "<=", tol, or_ok);
  const bool ok = dev_ok && gf_ok && or_ok;
  if (!ok) std::cout << "result: FAIL\n";
  return ok ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// theorem1

struct Theorem1Args {
  std::string demo = "pair";
  Numerics num;
};

int cmd_theorem1(const Theorem1Args& a) {
  const ExperimentConfig cfg = load_config(a.num, {}, false);
  const Resolved r = resolve(a.num, cfg, 400.0);
  const HermitianOperator x(pauli::X());
  const HermitianOperator shifted(5.0 * identity(2) + pauli::Z());
  std::optional<SubsystemDecomposition> dec;
  std::vector<GateWord> words;
  std::vector<HermitianOperator> hb;
  if (a.demo == "pair") {
    dec = SubsystemDecomposition::standard({{2, 2}, {2, 2}});
    words = {{{ProtocolKind::hadamard_type, 1, 0}}, {{ProtocolKind::t_type, 1, 0}}};
    hb = {x, shifted};
  } else if (a.demo == "single") {
    dec = SubsystemDecomposition::standard({{2, 2}});
    words = {{{ProtocolKind::hadamard_type, 1, 0}}};
    hb = {x};
  } else if (a.demo == "register") {
    dec = SubsystemDecomposition::standard({{4, 2}, {1, 2}});
    words = {{{ProtocolKind::hadamard_type, 2, 0}, {ProtocolKind::cnot_type, 2, 1}}, {}};
    hb = {x, shifted};
  } else if (a.demo == "scalar") {
    dec = SubsystemDecomposition::standard({{1, 2}, {1, 2}});
    words = {{}, {}};
    hb = {HermitianOperator(pauli::Z()), shifted};
  } else {
    throw ConfigError("unknown theorem1 demo '" + a.demo + "'");
  }
  Theorem1Options o;
  o.mode = r.mode;
  o.loop_duration = r.T;
  o.steps_per_segment = r.steps;
  o.samples = r.samples;
  o.leakage_tolerance = cfg.number("leakage_tolerance").value_or(1e-2);
  o.residual_tolerance = cfg.number("residual_tolerance").value_or(r.mode == RunMode::exact ? 1e-6 : 1e-3);
  o.fidelity_tolerance = r.mode == RunMode::exact ? 1e-6 : 1e-3;
  o.enforce = false;
  const Theorem1Report rep = theorem1_verify(*dec, words, hb, o);

  std::cout << "theorem1 demo " << a.demo << "  blocks " << dec->size() << "  dimension " << dec->dim() << "  loops "
            << rep.loops.size() << "  mode " << to_string(r.mode) << "\n";
  std::cout << "  block  d_A  d_B  residual        1-fidelity      out-of-block\n";
  for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
    const auto& b = rep.blocks[i];
    std::cout << "  " << std::left << std::setw(7) << i << std::setw(5) << b.d_a << std::setw(5) << b.d_b
              << std::setw(16) << fmt(b.factorization.residual, 4) << std::setw(16) << fmt(1.0 - b.a_fidelity, 4)
              << fmt(b.out_of_block, 4) << std::right << "\n";
  }
  for (std::size_t i = 0; i < rep.blocks.size(); ++i) {
    print_matrix(std::cout, "block " + std::to_string(i) + " A factor", rep.blocks[i].factorization.factor_a);
  }
  if (r.mode == RunMode::dynamical) std::cout << "  max leakage " << fmt(rep.max_leakage) << "\n";
  std::cout << "result: " << (rep.passed ? "ok" : "FAIL") << "\n";
  return rep.passed ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string name;
  std::vector<double> ts{50, 100, 200, 400};
  std::string csv;
  int jobs = 0;
  bool no_timing = false;
  Numerics num;
};

int cmd_sweep(const SweepArgs& a) {
  const ExperimentConfig cfg = load_config(a.num, {"qubits"}, true);
  validate_sweep_durations(a.ts);
  const Resolved r = resolve(a.num, cfg, a.ts.front());
  const GateProtocol p = make_protocol(a.name, cfg, r, "s_dagger");
  SweepOptions o;
  o.steps_per_segment = r.steps;
  o.samples = r.samples;
  o.jobs = a.jobs;
  const std::vector<SweepRow> rows = run_sweep(p, a.ts, o);

  std::cout << "sweep " << a.name << "  steps/segment " << r.steps << "  samples " << r.samples << "\n";
  std::cout << "  " << std::left << std::setw(10) << "T" << std::setw(16) << "leakage" << std::setw(18)
            << "1-fidelity" << std::setw(16) << "residual" << "wall [s]" << std::right << "\n";
  for (const auto& row : rows) {
    std::cout << "  " << std::left << std::setw(10) << fmt(row.T) << std::setw(16) << fmt(row.leakage, 4)
              << std::setw(18) << fmt(1.0 - row.fidelity_vs_exact, 4) << std::setw(16)
              << fmt(row.factorization_residual, 4) << fmt(a.no_timing ? 0.0 : row.wall_time_s, 3) << std::right
              << "\n";
  }
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw ConfigError("cannot write " + a.csv);
    write_sweep_csv(f, rows, !a.no_timing);
  }
  const double slope = infidelity_slope(rows);
  const bool ok = slope <= -0.8;
  std::cout << "log-log slope of (1 - fidelity) vs T: " << fmt(slope, 4) << "  (required <= -0.8)  "
            << (ok ? "ok" : "FAIL") << "\n";
  return ok ? kOk : kFail;
}

// ---------------------------------------------------------------------------
// berry

struct BerryArgs {
  double theta = std::numbers::pi / 2;
  int segments = 8;
  int samples = 4000;
  int steps = 2000;
  std::vector<double> ts{800, 1600};
};

int cmd_berry(const BerryArgs& a) {
  if (a.ts.empty()) throw InvalidArgument("berry: need at least one duration");
  for (double t : a.ts)
    if (!(t > 0.0)) throw InvalidArgument("berry: durations must be positive");
  const BerryReport b = run_berry(a.theta, a.segments, a.samples, a.ts, a.steps);
  std::cout << "berry loop  theta " << fmt(a.theta) << "  segments " << a.segments << "  samples " << a.samples << "\n";
  std::cout << "  transport phase        " << fmt_phase(b.transport_phase) << "\n";
  std::cout << "  half solid angle       " << fmt_phase(b.solid_angle / 2) << "  (cone: "
            << fmt(std::numbers::pi * (1 - std::cos(a.theta)), 9) << ")\n";
  for (std::size_t k = 0; k < b.durations.size(); ++k) {
    std::cout << "  evolved, T = " << std::left << std::setw(9) << fmt(b.durations[k]) << std::right << " "
              << fmt_phase(b.dynamical_phases[k]) << "\n";
  }
  std::cout << "  extrapolated (1/T -> 0) " << fmt_phase(b.extrapolated_phase) << "\n";
  std::cout << "checks:\n";
  const double d1 = phase_distance(b.transport_phase, b.extrapolated_phase);
  const double d2 = phase_distance(b.transport_phase, b.solid_angle / 2);
  print_check(std::cout, "|transport - evolved|", d1, "<=", 1e-3, d1 <= 1e-3);
  print_check(std::cout, "|transport - solid/2|", d2, "<=", 1e-3, d2 <= 1e-3);
  return d1 <= 1e-3 && d2 <= 1e-3 ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gates on subsystems: protocols, constructions and convergence checks"};
  app.require_subcommand(1);

  GateArgs gate;
  auto* g = app.add_subcommand("gate", "Run a gate protocol and check its factorization");
  g->add_option("protocol", gate.name, "hadamard | t | cnot | custom")->required();
  g->add_option("--variant", gate.variant, "cnot phase variant: s_dagger | s")->check(CLI::IsMember({"s_dagger", "s"}));
  g->add_option("--csv", gate.csv, "Write a one-row CSV summary");
  add_numerics(g, gate.num);

  LemmaArgs lemma;
  auto* l = app.add_subcommand("lemma", "Independent holonomies in two eigenspaces");
  l->add_option("--demo", lemma.demo, "gauge | scalar")->check(CLI::IsMember({"gauge", "scalar"}));
  add_numerics(l, lemma.num);

  Theorem1Args th;
  auto* t = app.add_subcommand("theorem1", "Gates on subsystem factors of a block decomposition");
  t->add_option("--demo", th.demo, "pair | single | register | scalar")
      ->check(CLI::IsMember({"pair", "single", "register", "scalar"}));
  add_numerics(t, th.num);

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Dynamical vs exact agreement over loop durations");
  s->add_option("protocol", sw.name, "hadamard | t | cnot | custom")->required();
  s->add_option("--T", sw.ts, "Comma-separated durations, strictly increasing")->delimiter(',');
  s->add_option("--csv", sw.csv, "CSV output path");
  s->add_option("--jobs", sw.jobs, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  s->add_flag("--no-timing", sw.no_timing, "Write 0 in the wall-time column");
  add_numerics(s, sw.num, false);

  BerryArgs be;
  auto* b = app.add_subcommand("berry", "Ground-level phase of the field loop at polar angle theta");
  b->add_option("--theta", be.theta, "Polar angle [rad]")->check(CLI::Range(0.0, std::numbers::pi));
  b->add_option("--segments", be.segments, "Polygon segments")->check(CLI::Range(3, 4096));
  b->add_option("--samples", be.samples, "Transport samples")->check(CLI::Range(2, 10000000));
  b->add_option("--steps", be.steps, "Integrator steps per segment")->check(CLI::PositiveNumber);
  b->add_option("--T", be.ts, "Comma-separated evolution durations")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*g) return cmd_gate(gate);
    if (*l) return cmd_lemma(lemma);
    if (*t) return cmd_theorem1(th);
    if (*s) return cmd_sweep(sw);
    if (*b) return cmd_berry(be);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
