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

// Independent holonomies in two eigenspaces from one base loop.
//
// A base loop gives holonomies (R, W2) in the ground and excited spaces of a
// two-level base Hamiltonian. Conjugating the loop by (I (+) C^k), where C
// cyclically permutes the eigenvectors of W2, keeps the base point fixed and
// turns W2 into C^k W2 C^-k while leaving R alone. Running the d2 conjugated
// rounds multiplies the excited holonomies into a multiple of the identity
// and the ground ones into W1 = R^d2.

#pragma once

#include <sstream>
#include <vector>

#include "hqc/evolution.hpp"
#include "hqc/gates.hpp"
#include "hqc/holonomy.hpp"
#include "hqc/path.hpp"
#include "hqc/protocols.hpp"

namespace hqc {

struct LemmaOptions {
  RunMode mode = RunMode::exact;
  /// Duration of each round in dynamical mode.
  double round_duration = 400.0;
  int steps_per_segment = 2000;
  int samples = 4000;
  double leakage_tolerance = 1e-2;
};

struct LemmaRound {
  /// I (+) C^k on the full space.
  Matrix conjugator;
  Matrix ground;
  Matrix excited;
  /// Off-block residual of the evolved round (dynamical mode).
  double leakage = 0.0;
};

struct LemmaReport {
  Index ground_dim = 0;
  Index excited_dim = 0;
  /// Base-point frame all blocks are expressed in.
  Matrix ground_basis;
  Matrix excited_basis;
  /// Ground holonomy of the base loop, i.e. the d2-th root of W1.
  Matrix root;
  Matrix w1;
  Matrix w2;
  /// Eigenphases alpha_j of W2 and the eigenvectors C permutes, in frame coordinates.
  RealVector alphas;
  Matrix w2_eigenvectors;
  Matrix cyclic;
  std::vector<LemmaRound> rounds;
  Matrix net_ground;
  Matrix net_excited;
  /// Phase phi of the best fit net_excited ~ e^{i phi} I and the max-norm deviation.
  double excited_phase = 0.0;
  double excited_deviation = 0.0;
  /// sum_j alpha_j, the phase the construction predicts for net_excited.
  double predicted_excited_phase = 0.0;
  double ground_fidelity = 0.0;
  /// max-norm distance between the computed net blocks and the direct product
  /// of the predicted round holonomies, R^d2 and prod_k C^k W2 C^-k.
  double oracle_deviation = 0.0;
  /// Whether R equals the principal d2-th root of W1.
  bool root_is_principal = false;
};

namespace detail {

inline std::pair<Matrix, Matrix> loop_blocks(const HamiltonianPath& loop, const std::vector<Matrix>& bases,
                                             const LemmaOptions& opt, double* leakage) {
  if (opt.mode == RunMode::exact) {
    const auto h = parallel_transport_holonomy(track_frames(loop, opt.samples, &bases));
    return {h.levels[0].geometric, h.levels[1].geometric};
  }
  const HamiltonianPath timed = loop.with_total_duration(opt.round_duration);
  const FrameTrack track = track_frames(timed, opt.samples, &bases);
  const auto h = geometric_decompose(timed, evolve(timed, opt.steps_per_segment, false), track, opt.leakage_tolerance);
  if (leakage != nullptr) *leakage = h.off_block_residual;
  return {h.levels[0].geometric, h.levels[1].geometric};
}

/// Best phase phi with m ~ e^{i phi} I, and max|m - e^{i phi} I|.
inline std::pair<double, double> scalar_fit(const Matrix& m) {
  const double phi = std::arg(m.trace());
  return {phi, max_abs(m - std::polar(1.0, phi) * identity(m.rows()))};
}

}  // namespace detail

inline LemmaReport lemma_execute(const HamiltonianPath& base_loop, Index ground_dim, const LemmaOptions& opt = {}) {
  if (!base_loop.is_loop()) throw PreconditionError("lemma_execute: base path is not a loop");
  const SpectralFrame base = spectral_decompose(base_loop.start());
  if (base.size() != 2) {
    std::ostringstream os;
    os << "lemma_execute: base point has " << base.size() << " levels; exactly two are required";
    throw PreconditionError(os.str());
  }
  if (base.level(0).degeneracy() != ground_dim) {
    std::ostringstream os;
    os << "lemma_execute: ground level has dimension " << base.level(0).degeneracy() << ", expected " << ground_dim;
    throw PreconditionError(os.str());
  }

  LemmaReport rep;
  rep.ground_dim = ground_dim;
  rep.excited_dim = base.level(1).degeneracy();
  rep.ground_basis = base.level(0).basis;
  rep.excited_basis = base.level(1).basis;
  const std::vector<Matrix> bases{rep.ground_basis, rep.excited_basis};
  const int d2 = static_cast<int>(rep.excited_dim);

  std::tie(rep.root, rep.w2) = detail::loop_blocks(base_loop, bases, opt, nullptr);
  rep.w1 = matrix_power(rep.root, d2);
  rep.root_is_principal = max_abs(principal_root(rep.w1, d2) - rep.root) < 1e-8;

  const auto eig = unitary_eigensystem(rep.w2);
  rep.alphas = eig.phases;
  rep.w2_eigenvectors = eig.vectors;
  rep.predicted_excited_phase = eig.phases.sum();
  rep.cyclic = cyclic_permutation(rep.excited_basis * eig.vectors).matrix();

  const Index dim = base_loop.dim();
  Matrix conj = identity(dim);
  rep.net_ground = identity(ground_dim);
  rep.net_excited = identity(rep.excited_dim);
  for (int k = 0; k < d2; ++k) {
    LemmaRound round;
    round.conjugator = conj;
    const HamiltonianPath path = k == 0 ? base_loop : conjugate_path(base_loop, UnitaryOperator(conj));
    std::tie(round.ground, round.excited) = detail::loop_blocks(path, bases, opt, &round.leakage);
    rep.net_ground = round.ground * rep.net_ground;
    rep.net_excited = round.excited * rep.net_excited;
    rep.rounds.push_back(std::move(round));
    conj = rep.cyclic * conj;
  }

  std::tie(rep.excited_phase, rep.excited_deviation) = detail::scalar_fit(rep.net_excited);
  rep.ground_fidelity = trace_overlap(rep.net_ground, rep.w1);

  // Direct product of the holonomies the construction predicts for each round.
  const Matrix c = rep.excited_basis.adjoint() * rep.cyclic * rep.excited_basis;
  Matrix ck = identity(rep.excited_dim), predicted = identity(rep.excited_dim);
  for (int k = 0; k < d2; ++k) {
    predicted = ck * rep.w2 * ck.adjoint() * predicted;
    ck = c * ck;
  }
  rep.oracle_deviation = std::max(max_abs(rep.net_excited - predicted), max_abs(rep.net_ground - rep.w1));
  return rep;
}

}  // namespace hqc
