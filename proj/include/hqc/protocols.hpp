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

// Gauge-qubit gate protocols. A system register is coupled to one ancillary
// gauge qubit in an arbitrary state; each protocol is a closed loop of
// interpolations based at X on the gauge qubit. Every eigenspace of the base
// Hamiltonian receives the same geometric gate on the system, and all
// dynamical phases collect on the gauge qubit.

#pragma once

#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hqc/evolution.hpp"
#include "hqc/gates.hpp"
#include "hqc/holonomy.hpp"
#include "hqc/path.hpp"

namespace hqc {

enum class ProtocolKind { hadamard_type, t_type, cnot_type };

inline std::string to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::hadamard_type: return "hadamard";
    case ProtocolKind::t_type: return "t";
    case ProtocolKind::cnot_type: return "cnot";
  }
  return "?";
}

/// Sign of the Y-type waypoint in the two-qubit loop. With the standard Pauli
/// matrices, -I(x)Y(x)Z yields S^dagger CNOT and +I(x)Y(x)Z yields S CNOT.
enum class CnotVariant { s_dagger, s };

/// Qubit roles in a register of n qubits. The gauge qubit must be the last
/// one so the system|gauge cut is a plain tensor split.
struct ProtocolLayout {
  int n_qubits = 2;
  int target = 1;
  int control = 0;  // cnot_type only
  int gauge = 2;
};

struct GateProtocol {
  ProtocolKind kind;
  ProtocolLayout layout;
  HamiltonianPath loop;
  /// Gate on the system qubits (all qubits but the gauge), 2^(n-1) square.
  UnitaryOperator target_system_gate;

  Index system_dim() const { return Index{1} << (layout.n_qubits - 1); }
  std::vector<int> system_qubits() const {
    std::vector<int> q;
    for (int i = 1; i <= layout.n_qubits; ++i)
      if (i != layout.gauge) q.push_back(i);
    return q;
  }
};

namespace detail {

inline void check_layout(const ProtocolLayout& l, bool two_qubit) {
  auto in_range = [&](int q) { return q >= 1 && q <= l.n_qubits; };
  if (l.n_qubits < (two_qubit ? 3 : 2) || l.n_qubits > 4) throw InvalidArgument("protocol layout: unsupported register size");
  if (l.gauge != l.n_qubits) throw InvalidArgument("protocol layout: the gauge qubit must be the last qubit");
  if (!in_range(l.target) || l.target == l.gauge) throw InvalidArgument("protocol layout: bad target qubit");
  if (two_qubit && (!in_range(l.control) || l.control == l.gauge || l.control == l.target)) {
    throw InvalidArgument("protocol layout: bad control qubit");
  }
}

inline HamiltonianPath chain(const std::vector<HermitianOperator>& waypoints, Schedule schedule, double total) {
  const double each = total / static_cast<double>(waypoints.size() - 1);
  std::vector<PathSegment> segs;
  for (std::size_t k = 0; k + 1 < waypoints.size(); ++k) segs.emplace_back(waypoints[k], waypoints[k + 1], schedule, each);
  return HamiltonianPath(std::move(segs));
}

/// Gate on the register minus its last qubit.
inline Matrix system_gate(const Matrix& single, int qubit, int n_system) { return gates::on_qubit(single, qubit, n_system); }

}  // namespace detail

/// Single-qubit loops:
///   hadamard_type: X_g -> Z_t Z_g -> X_t Z_g -> X_g, net gate R Z (R = Hadamard)
///   t_type:        X_g -> Z_t Z_g -> -(cos(pi/8) X_t + sin(pi/8) Y_t) Z_g -> -Z_t Z_g -> X_g,
///                  net gate T Z X
/// The first leg creates a geometric transformation that the last leg undoes.
inline GateProtocol build_single_qubit_protocol(ProtocolKind kind, double total_duration = 400.0,
                                                Schedule schedule = Schedule(), ProtocolLayout layout = {}) {
  if (kind == ProtocolKind::cnot_type) throw InvalidArgument("build_single_qubit_protocol: cnot_type is a two-qubit protocol");
  detail::check_layout(layout, false);
  const int n = layout.n_qubits, q = layout.target, g = layout.gauge;
  const auto base = pauli_string(n, {{g, pauli::X()}});
  const auto zz = pauli_string(n, {{q, pauli::Z()}, {g, pauli::Z()}});
  std::vector<HermitianOperator> waypoints{base, zz};
  Matrix gate;
  if (kind == ProtocolKind::hadamard_type) {
    waypoints.push_back(pauli_string(n, {{q, pauli::X()}, {g, pauli::Z()}}));
    gate = gates::hadamard() * pauli::Z();
  } else {
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    waypoints.push_back(pauli_string(n, {{q, c * pauli::X() + s * pauli::Y()}, {g, pauli::Z()}}, -1.0));
    waypoints.push_back(pauli_string(n, {{q, pauli::Z()}, {g, pauli::Z()}}, -1.0));
    gate = gates::t() * pauli::Z() * pauli::X();
  }
  waypoints.push_back(base);
  return GateProtocol{kind, layout, detail::chain(waypoints, schedule, total_duration),
                      UnitaryOperator(detail::system_gate(gate, q, n - 1))};
}

/// Two-qubit loop X_g -> Z_t Z_g -> -+Y_t Z_g -> Z_c Z_t Z_g -> X_g with net
/// gate S_c^dagger CNOT(c -> t) (or S_c CNOT for CnotVariant::s).
inline GateProtocol build_two_qubit_protocol(double total_duration = 400.0, Schedule schedule = Schedule(),
                                             ProtocolLayout layout = {3, 2, 1, 3},
                                             CnotVariant variant = CnotVariant::s_dagger) {
  detail::check_layout(layout, true);
  const int n = layout.n_qubits, c = layout.control, t = layout.target, g = layout.gauge;
  const double y_sign = variant == CnotVariant::s_dagger ? -1.0 : 1.0;
  const auto base = pauli_string(n, {{g, pauli::X()}});
  std::vector<HermitianOperator> waypoints{
      base,
      pauli_string(n, {{t, pauli::Z()}, {g, pauli::Z()}}),
      pauli_string(n, {{t, pauli::Y()}, {g, pauli::Z()}}, y_sign),
      pauli_string(n, {{c, pauli::Z()}, {t, pauli::Z()}, {g, pauli::Z()}}),
      base};
  const Matrix phase = variant == CnotVariant::s_dagger ? Matrix(gates::s().adjoint()) : gates::s();
  const Matrix gate = detail::system_gate(phase, c, n - 1) * gates::cnot(c, t, n - 1);
  ProtocolLayout l = layout;
  return GateProtocol{ProtocolKind::cnot_type, l, detail::chain(waypoints, schedule, total_duration), UnitaryOperator(gate)};
}

inline GateProtocol build_protocol(ProtocolKind kind, double total_duration = 400.0, Schedule schedule = Schedule()) {
  return kind == ProtocolKind::cnot_type ? build_two_qubit_protocol(total_duration, schedule)
                                         : build_single_qubit_protocol(kind, total_duration, schedule);
}

// ---------------------------------------------------------------------------

enum class RunMode { exact, dynamical };

inline std::string to_string(RunMode m) { return m == RunMode::exact ? "exact" : "dynamical"; }

struct RunOptions {
  RunMode mode = RunMode::exact;
  /// Total loop duration; the loop is retimed to it in dynamical mode and
  /// sets the dynamical phases in exact mode.
  double total_duration = 400.0;
  int steps_per_segment = 2000;
  /// Grid points for frame tracking (parallel transport and phase quadrature).
  int samples = 4000;
  /// Off-block residual accepted in dynamical mode.
  double leakage_tolerance = 1e-2;
  /// Factorization residual accepted; defaults to 1e-6 (exact) or 1e-3 (dynamical).
  std::optional<double> residual_tolerance;
  /// Replaces the eigensolver frame at the base point (one basis per level).
  std::optional<std::vector<Matrix>> initial_bases;
};

struct GateRunReport {
  ProtocolKind kind;
  RunMode mode;
  /// Full loop unitary on system (x) gauge.
  Matrix net_unitary;
  FactorizationReport factorization;
  /// Fidelity of the system-side factor with the protocol's target gate.
  double system_fidelity = 0.0;
  /// Per-level geometric blocks in the base-point frame.
  HolonomyResult levels;
  /// Tr_gauge(B_n U_n B_n^dagger): the geometric action of level n on the system.
  std::vector<Matrix> level_system_gates;
  /// Largest phase-aligned distance between level_system_gates.
  double equal_blocks_deviation = 0.0;
  /// Off-block residual of the evolved loop; 0 in exact mode.
  double leakage = 0.0;
  double step_error_estimate = -1.0;

  const Matrix& system_factor() const { return factorization.factor_a; }
  const Matrix& gauge_factor() const { return factorization.factor_b; }
};

inline void validate_protocol(const GateProtocol& p) {
  if (!p.loop.is_loop()) throw PreconditionError("gate protocol: path is not a closed loop");
  const auto base = pauli_string(p.layout.n_qubits, {{p.layout.gauge, pauli::X()}});
  if (max_distance(p.loop.start(), base) > kJoinTolerance) {
    throw PreconditionError("gate protocol: loop is not based at X on the gauge qubit");
  }
  bool moves = false;
  for (const auto& s : p.loop.segments()) moves = moves || max_distance(s.h_start(), s.h_end()) > kJoinTolerance;
  if (!moves) throw PreconditionError("gate protocol: degenerate loop (no segment moves the Hamiltonian)");
  if (p.target_system_gate.dim() != p.system_dim()) throw DimensionMismatch("gate protocol: target gate has wrong dimension");
}

inline GateRunReport run_gate_protocol(const GateProtocol& protocol, const RunOptions& opt = {}) {
  validate_protocol(protocol);
  const HamiltonianPath loop = protocol.loop.with_total_duration(opt.total_duration);
  const auto* bases = opt.initial_bases ? &*opt.initial_bases : nullptr;
  const FrameTrack track = track_frames(loop, opt.samples, bases);

  GateRunReport rep{protocol.kind, opt.mode, {}, {}, 0.0, {}, {}, 0.0, 0.0, -1.0};
  if (opt.mode == RunMode::exact) {
    rep.levels = parallel_transport_holonomy(track);
    rep.net_unitary = rep.levels.net_unitary();
  } else {
    const EvolutionResult ev = evolve(loop, opt.steps_per_segment);
    rep.levels = geometric_decompose(loop, ev, track, opt.leakage_tolerance);
    rep.leakage = rep.levels.off_block_residual;
    rep.step_error_estimate = ev.step_error_estimate;
    rep.net_unitary = ev.total_unitary.matrix();
  }

  const Index ds = protocol.system_dim();
  rep.factorization = product_factorize(UnitaryOperator::closest(rep.net_unitary), ds, 2);
  rep.system_fidelity = trace_overlap(rep.factorization.factor_a, protocol.target_system_gate.matrix());
  for (const auto& l : rep.levels.levels) {
    rep.level_system_gates.push_back(
        partial_trace_b(l.initial_basis * l.geometric * l.initial_basis.adjoint(), ds, 2));
  }
  for (const auto& g : rep.level_system_gates) {
    rep.equal_blocks_deviation = std::max(rep.equal_blocks_deviation, phase_aligned_distance(g, rep.level_system_gates.front()));
  }

  const double tol = opt.residual_tolerance.value_or(opt.mode == RunMode::exact ? 1e-6 : 1e-3);
  if (rep.factorization.residual > tol) {
    std::ostringstream os;
    os << "gate protocol " << to_string(protocol.kind) << ": factorization residual " << rep.factorization.residual
       << " exceeds " << tol;
    throw FactorizationFailure(os.str(), rep.factorization.residual);
  }
  return rep;
}

}  // namespace hqc
