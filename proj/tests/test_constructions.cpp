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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <numbers>
#include <random>

#include "hqc/gates.hpp"
#include "hqc/lemma.hpp"
#include "hqc/protocols.hpp"
#include "hqc/theorem1.hpp"
#include "test_util.hpp"

namespace hqc {
namespace {

using testing::random_unitary;

const cplx i1(0.0, 1.0);

Matrix literal(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Matrix bloch(const Eigen::Vector3d& n) { return n.x() * pauli::X() + n.y() * pauli::Y() + n.z() * pauli::Z(); }

// Loop based at X_g through two random (n.s) Z_g waypoints.
HamiltonianPath random_gauge_loop(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector3d n1, n2;
  do {
    n1 = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
    n2 = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
  } while (n1.dot(n2) < -0.5);
  const auto base = pauli_string(2, {{2, pauli::X()}});
  const HermitianOperator a(kron(bloch(n1), pauli::Z()));
  const HermitianOperator b(kron(bloch(n2), pauli::Z()));
  return HamiltonianPath(std::vector<PathSegment>{segment(base, a), segment(a, b), segment(b, base)});
}

// --- gate protocols --------------------------------------------------------

TEST(Protocols, HadamardLoopShape) {
  const GateProtocol p = build_single_qubit_protocol(ProtocolKind::hadamard_type);
  EXPECT_EQ(p.loop.segments().size(), 3u);
  EXPECT_TRUE(p.loop.is_loop());
  EXPECT_LT(max_distance(p.loop.start(), pauli_string(2, {{2, pauli::X()}})), 1e-15);
  EXPECT_NEAR(p.loop.total_duration(), 400.0, 1e-12);
}

TEST(Protocols, HadamardUndoEndpointMatchesConjugation) {
  const Matrix rz = testing::hadamard() * literal({{1, 0}, {0, -1}});
  const Matrix expected = kron(rz * literal({{1, 0}, {0, -1}}) * rz.adjoint(), literal({{1, 0}, {0, -1}}));
  const GateProtocol p = build_single_qubit_protocol(ProtocolKind::hadamard_type);
  EXPECT_LT(max_abs(p.loop.segments()[1].h_end().matrix() - expected), 1e-14);
  EXPECT_LT(max_abs(p.loop.segments()[2].h_start().matrix() - expected), 1e-14);
  EXPECT_LT(max_abs(p.loop.segments()[2].h_end().matrix() - p.loop.start().matrix()), 1e-15);
}

TEST(Protocols, TLoopWaypoints) {
  const GateProtocol p = build_single_qubit_protocol(ProtocolKind::t_type);
  ASSERT_EQ(p.loop.segments().size(), 4u);
  EXPECT_TRUE(p.loop.is_loop());
  const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
  const Matrix z = literal({{1, 0}, {0, -1}});
  const Matrix xy = literal({{0, c - i1 * s}, {c + i1 * s, 0}});
  EXPECT_LT(max_abs(p.loop.segments()[2].h_start().matrix() + kron(xy, z)), 1e-14);
  EXPECT_LT(max_abs(p.loop.segments()[3].h_start().matrix() + kron(z, z)), 1e-14);
  const Matrix t = literal({{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}});
  EXPECT_LT(max_abs(p.target_system_gate.matrix() - t * z * literal({{0, 1}, {1, 0}})), 1e-15);
}

TEST(Protocols, TwoQubitLoopShape) {
  const GateProtocol p = build_two_qubit_protocol();
  EXPECT_EQ(p.loop.segments().size(), 4u);
  EXPECT_TRUE(p.loop.is_loop());
  EXPECT_GT(min_gap(p.loop, 200), 0.0);
  const SpectralFrame f = spectral_decompose(p.loop.start());
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.level(0).degeneracy(), 4);
  EXPECT_EQ(f.level(1).degeneracy(), 4);
  EXPECT_NEAR(f.level(0).energy, -1.0, 1e-14);
  EXPECT_NEAR(f.level(1).energy, 1.0, 1e-14);
}

TEST(Protocols, TwoQubitTargetFromDefinitions) {
  const Matrix cnot = literal({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const Matrix sdg = literal({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -i1, 0}, {0, 0, 0, -i1}});
  EXPECT_LT(max_abs(build_two_qubit_protocol().target_system_gate.matrix() - sdg * cnot), 1e-15);
  const Matrix t = gates::t();
  EXPECT_LT(max_abs(gates::s() - t * t), 1e-15);
}

TEST(Protocols, LayoutValidation) {
  EXPECT_THROW(build_single_qubit_protocol(ProtocolKind::cnot_type), InvalidArgument);
  EXPECT_THROW(build_single_qubit_protocol(ProtocolKind::hadamard_type, 400.0, Schedule(), {2, 2, 0, 2}), InvalidArgument);
  EXPECT_THROW(build_two_qubit_protocol(400.0, Schedule(), {3, 1, 1, 3}), InvalidArgument);
  EXPECT_THROW(build_two_qubit_protocol(400.0, Schedule(), {3, 1, 2, 2}), InvalidArgument);
}

TEST(RunGateProtocol, ExactModeDeliversTargets) {
  for (auto kind : {ProtocolKind::hadamard_type, ProtocolKind::t_type, ProtocolKind::cnot_type}) {
    const GateRunReport r = run_gate_protocol(build_protocol(kind));
    EXPECT_GE(r.system_fidelity, 1.0 - 1e-6) << to_string(kind);
    EXPECT_LE(r.factorization.residual, 1e-6) << to_string(kind);
    EXPECT_LE(r.equal_blocks_deviation, 1e-6) << to_string(kind);
    EXPECT_EQ(r.level_system_gates.size(), 2u);
    EXPECT_LT(unitarity_defect(r.gauge_factor()), 1e-10);
  }
}

TEST(RunGateProtocol, SystemGateIndependentOfTiming) {
  for (double t : {10.0, 400.0, 3000.0}) {
    RunOptions o;
    o.total_duration = t;
    EXPECT_GE(run_gate_protocol(build_protocol(ProtocolKind::hadamard_type), o).system_fidelity, 1.0 - 1e-6) << t;
  }
}

TEST(RunGateProtocol, PositiveYWaypointGivesPhaseGateOtherWay) {
  const GateProtocol p = build_two_qubit_protocol(400.0, Schedule(), {3, 2, 1, 3}, CnotVariant::s);
  const GateRunReport r = run_gate_protocol(p);
  const Matrix s_cnot = kron(gates::s(), identity(2)) * gates::cnot(1, 2, 2);
  EXPECT_GE(trace_overlap(r.system_factor(), s_cnot), 1.0 - 1e-6);
  EXPECT_LE(trace_overlap(r.system_factor(), build_two_qubit_protocol().target_system_gate.matrix()), 0.75);
}

TEST(RunGateProtocol, DynamicalCnot) {
  RunOptions o;
  o.mode = RunMode::dynamical;
  const GateRunReport r = run_gate_protocol(build_two_qubit_protocol(), o);
  EXPECT_GE(r.system_fidelity, 0.999);
  EXPECT_LT(r.leakage, 1e-2);
  EXPECT_LE(r.factorization.residual, 1e-3);
}

TEST(RunGateProtocol, DynamicalHadamard) {
  RunOptions o;
  o.mode = RunMode::dynamical;
  const GateRunReport r = run_gate_protocol(build_protocol(ProtocolKind::hadamard_type), o);
  EXPECT_GE(r.system_fidelity, 0.999);
  EXPECT_GE(r.step_error_estimate, 0.0);
}

TEST(RunGateProtocol, RejectsDegenerateLoop) {
  const auto base = pauli_string(2, {{2, pauli::X()}});
  GateProtocol p{ProtocolKind::hadamard_type, {}, HamiltonianPath(segment(base, base, Schedule(), 5.0)),
                 UnitaryOperator::identity(2)};
  EXPECT_THROW(run_gate_protocol(p), PreconditionError);
}

TEST(RunGateProtocol, RejectsForeignBasePoint) {
  GateProtocol p = build_protocol(ProtocolKind::hadamard_type);
  p.loop = conjugate_path(p.loop, UnitaryOperator(kron(identity(2), testing::hadamard())));
  EXPECT_THROW(run_gate_protocol(p), PreconditionError);
}

TEST(RunGateProtocol, FactorizationFailureIsReported) {
  RunOptions o;
  o.mode = RunMode::dynamical;
  o.total_duration = 40.0;
  o.leakage_tolerance = 1.0;
  o.residual_tolerance = 1e-6;
  EXPECT_THROW(run_gate_protocol(build_protocol(ProtocolKind::hadamard_type), o), FactorizationFailure);
}

TEST(RunGateProtocol, GaugeLoopsFactorize) {
  // Every loop of the form a X_g + (n.s) Z_g factors across system|gauge.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    GateProtocol p{ProtocolKind::hadamard_type, {}, random_gauge_loop(rng), UnitaryOperator::identity(2)};
    RunOptions o;
    o.samples = 300;
    o.total_duration = 3.0;
    const GateRunReport r = run_gate_protocol(p, o);
    EXPECT_LE(r.factorization.residual, 1e-6);
    EXPECT_EQ(r.factorization.schmidt_rank(1e-6), 1);
  }
}

TEST(RunGateProtocol, RegaugedFrameKeepsSystemFactor) {
  std::mt19937_64 rng(17);
  const GateProtocol p = build_protocol(ProtocolKind::hadamard_type);
  RunOptions o;
  o.samples = 600;
  const GateRunReport ref = run_gate_protocol(p, o);
  const SpectralFrame f = spectral_decompose(p.loop.start());
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Matrix> bases;
    for (const auto& l : f.levels()) bases.push_back(l.basis * random_unitary(l.degeneracy(), rng));
    o.initial_bases = bases;
    const GateRunReport r = run_gate_protocol(p, o);
    EXPECT_GE(trace_overlap(r.system_factor(), ref.system_factor()), 1.0 - 1e-8);
    EXPECT_LT(max_abs(r.net_unitary - ref.net_unitary), 1e-8);
  }
}

// --- roots and eigensystems ------------------------------------------------

TEST(Roots, PrincipalRootOfDiagonal) {
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = std::polar(1.0, 3.0);
  u(1, 1) = -1.0;
  const Matrix r = principal_root(u, 2);
  EXPECT_LT(std::abs(r(0, 0) - std::polar(1.0, 1.5)), 1e-14);
  EXPECT_LT(std::abs(r(1, 1) - i1), 1e-14);
}

TEST(Roots, RootPowersBack) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % 4;
    const Matrix u = random_unitary(1 + trial % 5, rng);
    const Matrix r = principal_root(u, k);
    EXPECT_LT(max_abs(matrix_power(r, k) - u), 1e-10);
    Eigen::ComplexEigenSolver<Matrix> es(r);
    for (Index j = 0; j < r.rows(); ++j) {
      EXPECT_LE(std::abs(std::arg(es.eigenvalues()(j))), std::numbers::pi / k + 1e-10);
    }
  }
}

TEST(Roots, DegenerateEigenphasesAreOrderedDeterministically) {
  const Matrix u = identity(3) * std::polar(1.0, 0.4);
  const UnitaryEigensystem a = unitary_eigensystem(u);
  const UnitaryEigensystem b = unitary_eigensystem(u);
  EXPECT_LT(max_abs(a.vectors - b.vectors), 1e-15);
  EXPECT_LT(max_abs(a.vectors.adjoint() * a.vectors - identity(3)), 1e-12);
}

// --- lemma -----------------------------------------------------------------

TEST(Lemma, SingleExcitedStateNeedsOneRound) {
  const auto z = pauli_string(1, {{1, pauli::Z()}});
  const auto x = pauli_string(1, {{1, pauli::X()}});
  const auto y = pauli_string(1, {{1, pauli::Y()}});
  const HamiltonianPath loop(std::vector<PathSegment>{segment(z, x), segment(x, y), segment(y, z)});
  const LemmaReport r = lemma_execute(loop, 1);
  EXPECT_EQ(r.rounds.size(), 1u);
  EXPECT_EQ(r.excited_dim, 1);
  EXPECT_LT(r.excited_deviation, 1e-14);
  EXPECT_NEAR(r.ground_fidelity, 1.0, 1e-12);
}

TEST(Lemma, GaugeLoopExactMode) {
  const auto loop = build_protocol(ProtocolKind::hadamard_type).loop;
  const LemmaReport r = lemma_execute(loop, 2);
  ASSERT_EQ(r.rounds.size(), 2u);
  EXPECT_LE(r.excited_deviation, 1e-6);
  EXPECT_GE(r.ground_fidelity, 1.0 - 1e-6);

  // Oracle: eigenphases from a general eigensolver; any cyclic relabelling
  // multiplies the excited rounds to e^{i sum alpha} I.
  Eigen::ComplexEigenSolver<Matrix> es(r.w2);
  double sum = 0.0;
  for (Index j = 0; j < es.eigenvalues().size(); ++j) sum += std::arg(es.eigenvalues()(j));
  EXPECT_LT(max_abs(r.net_excited - std::polar(1.0, sum) * identity(2)), 1e-6);

  // Oracle: transport each conjugated round directly and multiply.
  const std::vector<Matrix> bases{r.ground_basis, r.excited_basis};
  Matrix g = identity(2), e = identity(2);
  for (const auto& round : r.rounds) {
    EXPECT_LT(max_abs(round.conjugator * loop.start().matrix() * round.conjugator.adjoint() - loop.start().matrix()),
              1e-12);
    const auto h = parallel_transport_holonomy(
        track_frames(conjugate_path(loop, UnitaryOperator(round.conjugator)), 4000, &bases));
    g = h.levels[0].geometric * g;
    e = h.levels[1].geometric * e;
  }
  EXPECT_LT(max_abs(g - r.net_ground), 1e-10);
  EXPECT_LT(max_abs(e - r.net_excited), 1e-10);
  EXPECT_LT(max_abs(g - matrix_power(r.root, 2)), 1e-6);
}

TEST(Lemma, RoundsKeepSpectrum) {
  const auto loop = build_protocol(ProtocolKind::t_type).loop;
  const LemmaReport r = lemma_execute(loop, 2);
  for (const auto& round : r.rounds) {
    const HamiltonianPath moved = conjugate_path(loop, UnitaryOperator(round.conjugator));
    for (double t : uniform_times(loop.total_duration(), 23)) {
      Eigen::SelfAdjointEigenSolver<Matrix> a(loop.matrix_at(t), Eigen::EigenvaluesOnly);
      Eigen::SelfAdjointEigenSolver<Matrix> b(moved.matrix_at(t), Eigen::EigenvaluesOnly);
      EXPECT_LT((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Lemma, DynamicalModeReproducesExact) {
  const auto loop = build_protocol(ProtocolKind::hadamard_type).loop;
  const LemmaReport ex = lemma_execute(loop, 2);
  LemmaOptions o;
  o.mode = RunMode::dynamical;
  const LemmaReport dy = lemma_execute(loop, 2, o);
  EXPECT_GE(trace_overlap(ex.net_ground, dy.net_ground), 0.999);
  EXPECT_GE(trace_overlap(ex.net_excited, dy.net_excited), 0.999);
  for (const auto& round : dy.rounds) EXPECT_LT(round.leakage, 1e-2);
}

TEST(Lemma, NetExcitedBlockCommutes) {
  std::mt19937_64 rng(29);
  LemmaOptions o;
  o.samples = 300;
  for (int trial = 0; trial < 100; ++trial) {
    const LemmaReport r = lemma_execute(random_gauge_loop(rng), 2, o);
    const Matrix m = testing::random_gaussian(2, 2, rng);
    EXPECT_LE(max_abs(r.net_excited * m - m * r.net_excited), 1e-5 * max_abs(m));
    EXPECT_LT(r.oracle_deviation, 1e-8);
  }
}

TEST(Lemma, RejectsWrongBasePoint) {
  const auto loop = build_protocol(ProtocolKind::hadamard_type).loop;
  EXPECT_THROW(lemma_execute(loop, 1), PreconditionError);
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 0.0, 1.0, 2.0;
  const HermitianOperator h(d);
  EXPECT_THROW(lemma_execute(HamiltonianPath(segment(h, h)), 1), PreconditionError);
}

// --- subsystem combination -------------------------------------------------

TEST(Theorem1, SingleBlockReducesToProtocol) {
  const auto dec = SubsystemDecomposition::standard({{2, 2}});
  const GateWord word{{ProtocolKind::hadamard_type, 1, 0}};
  const Theorem1Report r = theorem1_verify(dec, {word}, {HermitianOperator(pauli::X())});
  const GateProtocol p = build_protocol(ProtocolKind::hadamard_type);
  ASSERT_EQ(r.loops.size(), 1u);
  for (std::size_t k = 0; k < p.loop.segments().size(); ++k) {
    EXPECT_LT(max_distance(r.loops[0].segments()[k].h_start(), p.loop.segments()[k].h_start()), 1e-14);
  }
  EXPECT_LT(max_abs(r.net_unitary - run_gate_protocol(p).net_unitary), 1e-10);
  EXPECT_TRUE(r.passed);
}

TEST(Theorem1, SingleBlockWithGeneralTwoLevelH) {
  const auto dec = SubsystemDecomposition::standard({{2, 2}});
  const GateWord word{{ProtocolKind::hadamard_type, 1, 0}};
  Matrix hb(2, 2);
  hb << 0.3, cplx(0.4, -0.7), cplx(0.4, 0.7), -1.1;
  const Theorem1Report r = theorem1_verify(dec, {word}, {HermitianOperator(hb)});
  EXPECT_LE(r.blocks[0].factorization.residual, 1e-6);
  EXPECT_GE(r.blocks[0].a_fidelity, 1.0 - 1e-6);
  EXPECT_LT(max_abs(r.blocks[0].requested - testing::hadamard() * literal({{1, 0}, {0, -1}})), 1e-15);
}

TEST(Theorem1, ScalarFactorsGiveBlockPhases) {
  const auto dec = SubsystemDecomposition::standard({{1, 2}, {1, 2}});
  const Theorem1Report r = theorem1_verify(dec, {{}, {}},
                                           {HermitianOperator(pauli::Z()), HermitianOperator(3.0 * identity(2) + pauli::X())});
  EXPECT_TRUE(r.passed);
  Matrix off = r.net_unitary;
  off.topLeftCorner(2, 2).setZero();
  off.bottomRightCorner(2, 2).setZero();
  EXPECT_LT(max_abs(off), 1e-12);
  for (const auto& b : r.blocks) EXPECT_LT(b.factorization.residual, 1e-12);
}

TEST(Theorem1, TwoQubitBlocks) {
  const auto dec = SubsystemDecomposition::standard({{2, 2}, {2, 2}});
  const std::vector<GateWord> words{{{ProtocolKind::hadamard_type, 1, 0}}, {{ProtocolKind::t_type, 1, 0}}};
  const Theorem1Report r =
      theorem1_verify(dec, words, {HermitianOperator(pauli::X()), HermitianOperator(5.0 * identity(2) + pauli::Z())});
  ASSERT_EQ(r.blocks.size(), 2u);
  for (const auto& b : r.blocks) {
    EXPECT_LE(b.factorization.residual, 1e-6);
    EXPECT_GE(b.a_fidelity, 1.0 - 1e-6);
    EXPECT_LT(b.out_of_block, 1e-6);
  }
  EXPECT_TRUE(r.passed);
}

TEST(Theorem1, TwoQubitRegisterWord) {
  const auto dec = SubsystemDecomposition::standard({{4, 2}, {1, 2}});
  const GateWord word{{ProtocolKind::hadamard_type, 2, 0}, {ProtocolKind::cnot_type, 2, 1}};
  const Theorem1Report r =
      theorem1_verify(dec, {word, {}}, {HermitianOperator(pauli::X()), HermitianOperator(4.0 * identity(2) + pauli::Z())});
  EXPECT_EQ(r.loops.size(), 2u);
  EXPECT_GE(r.blocks[0].a_fidelity, 1.0 - 1e-6);
  EXPECT_LE(r.blocks[0].factorization.residual, 1e-6);
  EXPECT_TRUE(r.passed);
}

TEST(Theorem1, DynamicalMode) {
  const auto dec = SubsystemDecomposition::standard({{2, 2}, {1, 2}});
  Theorem1Options o;
  o.mode = RunMode::dynamical;
  o.residual_tolerance = 1e-3;
  o.fidelity_tolerance = 1e-3;
  const Theorem1Report r = theorem1_verify(dec, {{{ProtocolKind::hadamard_type, 1, 0}}, {}},
                                           {HermitianOperator(pauli::X()), HermitianOperator(4.0 * identity(2) + pauli::Z())}, o);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.max_leakage, 1e-2);
}

TEST(Theorem1, SharedEigenvalueIsACollision) {
  const auto dec = SubsystemDecomposition::standard({{2, 2}, {2, 2}});
  EXPECT_THROW(theorem1_verify(dec, {{}, {}}, {HermitianOperator(pauli::X()), HermitianOperator(pauli::Z())}),
               SpectralCollision);
}

TEST(Theorem1, LevelsMeetingAlongALoopIsACollision) {
  // The driven block's levels dip to +-1/sqrt(2) mid-segment and cross -0.8.
  const auto dec = SubsystemDecomposition::standard({{2, 2}, {1, 2}});
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << -0.8, 3.0;
  EXPECT_THROW(theorem1_verify(dec, {{{ProtocolKind::hadamard_type, 1, 0}}, {}},
                               {HermitianOperator(pauli::X()), HermitianOperator(d)}),
               SpectralCollision);
}

TEST(Theorem1, Preconditions) {
  EXPECT_THROW(theorem1_verify(SubsystemDecomposition::standard({{2, 2}}), {{}}, {HermitianOperator(identity(2))}),
               PreconditionError);
  EXPECT_THROW(theorem1_verify(SubsystemDecomposition::standard({{3, 2}}), {{{ProtocolKind::hadamard_type, 1, 0}}},
                               {HermitianOperator(pauli::X())}),
               PreconditionError);
  EXPECT_THROW(SubsystemDecomposition::standard({}), InvalidArgument);
  std::vector<SubsystemBlock> overlapping{{1, 2, identity(3).leftCols(2)}, {1, 1, identity(3).col(1)}};
  EXPECT_THROW(SubsystemDecomposition{overlapping}, InvalidArgument);
}

}  // namespace
}  // namespace hqc
