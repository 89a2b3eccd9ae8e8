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

#include "hqc/evolution.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace hqc {
namespace {

HermitianOperator ix() { return pauli_string(2, {{2, pauli::X()}}); }
HermitianOperator zz() { return pauli_string(2, {{1, pauli::Z()}, {2, pauli::Z()}}); }
HermitianOperator xz() { return pauli_string(2, {{1, pauli::X()}, {2, pauli::Z()}}); }

TEST(Evolve, ScalarPhase) {
  HermitianOperator h(0.7 * identity(3));
  auto r = evolve(HamiltonianPath(segment(h, h, Schedule(), 5.0)), 10);
  EXPECT_LT(max_abs(r.total_unitary.matrix() - std::polar(1.0, -3.5) * identity(3)), 1e-13);
  EXPECT_EQ(r.steps, 10);
  EXPECT_DOUBLE_EQ(r.duration, 5.0);
}

TEST(Evolve, ConstantZ) {
  auto z = pauli_string(1, {{1, pauli::Z()}});
  auto r = evolve(HamiltonianPath(segment(z, z, Schedule(), 2.5)), 3);
  EXPECT_LT(std::abs(r.total_unitary.matrix()(0, 0) - std::polar(1.0, -2.5)), 1e-13);
  EXPECT_LT(std::abs(r.total_unitary.matrix()(1, 1) - std::polar(1.0, 2.5)), 1e-13);
  EXPECT_LT(r.step_error_estimate, 1e-13);
}

TEST(Evolve, StepDoublingShowsSecondOrder) {
  HamiltonianPath p(segment(ix(), zz(), Schedule(ScheduleKind::cosine), 10.0));
  const double e1 = evolve(p, 200).step_error_estimate;
  const double e2 = evolve(p, 400).step_error_estimate;
  const double ratio = e1 / e2;
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Evolve, MatchesIndependentTaylorIntegrator) {
  // Oracle: fine-step midpoint products built from a Taylor exponential.
  HamiltonianPath p(std::vector<PathSegment>{segment(ix(), zz(), Schedule(), 3.0), segment(zz(), xz(), Schedule(), 3.0)});
  const int fine = 4000;
  Matrix oracle = identity(4);
  for (const auto& s : p.segments()) {
    const double dt = s.duration() / fine;
    for (int j = 0; j < fine; ++j) {
      const double sm = (j + 0.5) / fine;
      const Matrix h = s.schedule().f(sm) * s.h_start().matrix() + s.schedule().g(sm) * s.h_end().matrix();
      oracle = testing::taylor_exp(h, dt, 12) * oracle;
    }
  }
  auto r = evolve(p, 400);
  EXPECT_LT(max_abs(r.total_unitary.matrix() - oracle), 2.0 * r.step_error_estimate + 1e-9);
  EXPECT_LT(r.step_error_estimate, 1e-4);
}

TEST(Evolve, CompositionLaw) {
  HamiltonianPath p(segment(ix(), zz(), Schedule(), 4.0));
  HamiltonianPath q(segment(zz(), xz(), Schedule(), 4.0));
  auto up = evolve(p, 300), uq = evolve(q, 300), upq = evolve(concat({p, q}), 300);
  EXPECT_LT(max_abs(upq.total_unitary.matrix() - uq.total_unitary.matrix() * up.total_unitary.matrix()), 1e-12);
}

TEST(Evolve, ConjugationCovariance) {
  std::mt19937_64 rng(23);
  HamiltonianPath p(std::vector<PathSegment>{segment(ix(), zz(), Schedule(), 4.0), segment(zz(), ix(), Schedule(), 4.0)});
  auto up = evolve(p, 200).total_unitary.matrix();
  for (int trial = 0; trial < 10; ++trial) {
    UnitaryOperator v(testing::random_unitary(4, rng));
    auto uq = evolve(conjugate_path(p, v), 200).total_unitary.matrix();
    EXPECT_LT(max_abs(uq - v.matrix() * up * v.matrix().adjoint()), 1e-10);
  }
}

TEST(Evolve, RejectsZeroSteps) {
  EXPECT_THROW(evolve(HamiltonianPath(segment(ix(), zz())), 0), InvalidArgument);
}

TEST(Leakage, ConstantPathIsExactlyAdiabatic) {
  HamiltonianPath p(segment(zz(), zz(), Schedule(), 50.0));
  EXPECT_LT(adiabatic_leakage(p, 20), 1e-13);
}

TEST(Leakage, SuddenLimitLeaks) {
  // Frozen state against a rotated frame: |(I - Pi_ZZ)Pi_IX| = 1/sqrt(2).
  HamiltonianPath p(segment(ix(), zz(), Schedule(), 1e-6));
  EXPECT_NEAR(adiabatic_leakage(p, 4), std::sqrt(0.5), 1e-5);
}

TEST(Leakage, DecaysWithDuration) {
  HamiltonianPath base(segment(ix(), zz(), Schedule(ScheduleKind::cosine), 1.0));
  double previous = 1.0;
  for (double t : {25.0, 100.0, 400.0}) {
    const double l = adiabatic_leakage(base.with_total_duration(t), static_cast<int>(40 * t));
    EXPECT_LT(l, previous) << "T = " << t;
    previous = l;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(Leakage, UnresolvableCrossingIsReported) {
  auto z = pauli_string(1, {{1, pauli::Z()}});
  HamiltonianPath p(segment(z, -z, Schedule(ScheduleKind::linear), 1.0));
  EXPECT_THROW(adiabatic_leakage(p, 10, 11), TrackingError);
}

}  // namespace
}  // namespace hqc
