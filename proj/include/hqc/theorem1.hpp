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

// Holonomic gates on subsystems of a decomposition
//   H = (+)_i  H_i^A (x) H_i^B
// starting from H(0) = (+)_i I_i^A (x) H_i^B. Each block's B factor plays the
// role of the gauge qubit: the block runs the gauge-qubit protocol loops for
// its requested gate word while the other blocks are held at their base
// Hamiltonians. The net unitary is then (+)_i W_i^A (x) V_i^B.
//
// Supported control set: every block whose gate word is non-empty has
// d_B = 2 with two distinct eigenvalues of H_i^B and d_A in {2, 4, 8};
// blocks with empty words may have any shape.

#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "hqc/evolution.hpp"
#include "hqc/holonomy.hpp"
#include "hqc/protocols.hpp"

namespace hqc {

struct SubsystemBlock {
  Index d_a = 1;
  Index d_b = 1;
  /// Orthonormal columns identifying H_i^A (x) H_i^B (A index major) in the ambient space.
  Matrix embedding;
};

class SubsystemDecomposition {
 public:
  explicit SubsystemDecomposition(std::vector<SubsystemBlock> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidArgument("subsystem decomposition: no blocks");
    dim_ = blocks_.front().embedding.rows();
    Index total = 0;
    for (const auto& b : blocks_) {
      if (b.d_a < 1 || b.d_b < 1 || b.embedding.rows() != dim_ || b.embedding.cols() != b.d_a * b.d_b) {
        throw DimensionMismatch("subsystem decomposition: block embedding has the wrong shape");
      }
      total += b.d_a * b.d_b;
    }
    if (total != dim_) throw DimensionMismatch("subsystem decomposition: blocks do not fill the space");
    Matrix all(dim_, dim_);
    Index col = 0;
    for (const auto& b : blocks_) {
      all.middleCols(col, b.embedding.cols()) = b.embedding;
      col += b.embedding.cols();
    }
    if (max_abs(all.adjoint() * all - identity(dim_)) > 1e-10) {
      throw InvalidArgument("subsystem decomposition: embeddings are not orthonormal and mutually orthogonal");
    }
  }

  /// Blocks laid out on consecutive computational basis states.
  static SubsystemDecomposition standard(const std::vector<std::pair<Index, Index>>& dims) {
    Index n = 0;
    for (const auto& [a, b] : dims) n += a * b;
    std::vector<SubsystemBlock> blocks;
    Index offset = 0;
    for (const auto& [a, b] : dims) {
      blocks.push_back({a, b, identity(n).middleCols(offset, a * b)});
      offset += a * b;
    }
    return SubsystemDecomposition(std::move(blocks));
  }

  const std::vector<SubsystemBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  Index dim() const { return dim_; }

 private:
  std::vector<SubsystemBlock> blocks_;
  Index dim_ = 0;
};

/// One protocol gate on the A factor (qubits 1-based within A).
struct GateStep {
  ProtocolKind kind = ProtocolKind::hadamard_type;
  int target = 1;
  int control = 0;
};

/// Gates applied left to right in time; the unitary is the reversed product.
using GateWord = std::vector<GateStep>;

inline int qubit_count(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim) throw PreconditionError("dimension is not a power of two");
  return n;
}

/// Builds the gauge-qubit protocol for one step on an A register of n_a qubits.
inline GateProtocol protocol_for_step(const GateStep& step, int n_a, double duration, Schedule schedule = Schedule()) {
  ProtocolLayout layout{n_a + 1, step.target, step.control, n_a + 1};
  if (step.kind == ProtocolKind::cnot_type) return build_two_qubit_protocol(duration, schedule, layout);
  return build_single_qubit_protocol(step.kind, duration, schedule, layout);
}

/// Unitary of a gate word on an A register of dimension d_a.
inline Matrix word_unitary(const GateWord& word, Index d_a) {
  Matrix u = identity(d_a);
  if (word.empty()) return u;
  const int n_a = qubit_count(d_a);
  for (const auto& step : word) u = protocol_for_step(step, n_a, 1.0).target_system_gate.matrix() * u;
  return u;
}

struct Theorem1Options {
  RunMode mode = RunMode::exact;
  /// Duration of each protocol loop.
  double loop_duration = 400.0;
  int steps_per_segment = 2000;
  int samples = 4000;
  double leakage_tolerance = 1e-2;
  double residual_tolerance = 1e-6;
  double fidelity_tolerance = 1e-6;
  /// Smallest admissible gap along any loop.
  double min_gap = 1e-6;
  /// Throw FactorizationFailure when a block's residual exceeds the tolerance.
  bool enforce = true;
};

struct Theorem1BlockReport {
  Index d_a = 1;
  Index d_b = 1;
  Matrix requested;
  Matrix block_unitary;
  FactorizationReport factorization;
  double a_fidelity = 0.0;
  /// |(I - E E^dagger) U E|_2: amplitude leaving the block.
  double out_of_block = 0.0;
};

struct Theorem1Report {
  Matrix h0;
  std::vector<HamiltonianPath> loops;
  Matrix net_unitary;
  std::vector<Theorem1BlockReport> blocks;
  double max_leakage = 0.0;
  bool passed = false;
};

namespace detail {

struct BlockMap {
  double center = 0.0;
  double half_gap = 1.0;
  /// Maps X eigenvectors (|->, |+>) to H^B eigenvectors (low, high).
  Matrix rotation;
};

inline BlockMap two_level_map(const HermitianOperator& hb) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hb.matrix());
  const RealVector& w = es.eigenvalues();
  Matrix u = es.eigenvectors();
  Matrix xs(2, 2);  // columns |->, |+>
  xs << 1, 1, -1, 1;
  xs /= std::sqrt(2.0);
  // Fix eigenvector phases so that H^B = X maps to the identity rotation.
  for (Index k = 0; k < 2; ++k) {
    cplx ov = xs.col(k).dot(u.col(k));
    if (std::abs(ov) < 1e-8) {
      Index i = std::abs(u(0, k)) > 1e-8 ? 0 : 1;
      ov = u(i, k);
    }
    u.col(k) *= std::conj(ov) / std::abs(ov);
  }
  return {0.5 * (w(0) + w(1)), 0.5 * (w(1) - w(0)), u * xs.adjoint()};
}

}  // namespace detail

inline Theorem1Report theorem1_verify(const SubsystemDecomposition& dec, const std::vector<GateWord>& words,
                                      const std::vector<HermitianOperator>& hb, const Theorem1Options& opt = {}) {
  const std::size_t m = dec.size();
  if (words.size() != m || hb.size() != m) throw InvalidArgument("theorem1_verify: one gate word and one H^B per block");
  const Index dim = dec.dim();

  // Base spectra: distinct across blocks, and at least two levels when m = 1.
  std::vector<RealVector> spectra;
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& b = dec.blocks()[i];
    if (hb[i].dim() != b.d_b) throw DimensionMismatch("theorem1_verify: H^B has the wrong dimension");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hb[i].matrix(), Eigen::EigenvaluesOnly);
    spectra.push_back(es.eigenvalues());
    scale = std::max(scale, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  const double tol = 1e-8 * std::max(1.0, scale);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (Index a = 0; a < spectra[i].size(); ++a)
        for (Index b = 0; b < spectra[j].size(); ++b)
          if (std::abs(spectra[i](a) - spectra[j](b)) <= tol) {
            std::ostringstream os;
            os << "theorem1_verify: blocks " << i << " and " << j << " share the eigenvalue " << spectra[i](a);
            throw SpectralCollision(os.str());
          }
  if (m == 1 && spectra[0].maxCoeff() - spectra[0].minCoeff() <= tol) {
    throw PreconditionError("theorem1_verify: a single block needs H^B with at least two distinct eigenvalues");
  }

  Theorem1Report rep;
  rep.h0 = Matrix::Zero(dim, dim);
  std::vector<Matrix> block_base(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& b = dec.blocks()[i];
    block_base[i] = b.embedding * kron(identity(b.d_a), hb[i].matrix()) * b.embedding.adjoint();
    rep.h0 += block_base[i];
  }

  // One loop per gate step: block i runs the protocol, the rest stay put.
  for (std::size_t i = 0; i < m; ++i) {
    if (words[i].empty()) continue;
    const auto& b = dec.blocks()[i];
    if (b.d_b != 2 || b.d_a < 2 || b.d_a > 8) {
      throw PreconditionError("theorem1_verify: gate words need d_B = 2 and d_A in {2, 4, 8}");
    }
    const int n_a = qubit_count(b.d_a);
    const auto map = detail::two_level_map(hb[i]);
    const Matrix v = kron(identity(b.d_a), map.rotation);
    Matrix rest = rep.h0 - block_base[i];
    auto embed = [&](const HermitianOperator& p) {
      const Matrix local = map.center * identity(b.d_a * 2) + map.half_gap * (v * p.matrix() * v.adjoint());
      return HermitianOperator(b.embedding * local * b.embedding.adjoint() + rest);
    };
    // Static eigenvalues of the other blocks.
    std::vector<double> others;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) others.insert(others.end(), spectra[j].begin(), spectra[j].end());
    for (const auto& step : words[i]) {
      const GateProtocol proto = protocol_for_step(step, n_a, opt.loop_duration);
      // Each sorted local level sweeps a band; a foreign eigenvalue inside a
      // band is met by that level somewhere along the loop.
      RealVector lo, hi;
      for (double t : uniform_times(proto.loop.total_duration(), 401)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(proto.loop.matrix_at(t), Eigen::EigenvaluesOnly);
        const RealVector e = (map.center + map.half_gap * es.eigenvalues().array()).matrix();
        lo = lo.size() == 0 ? e : RealVector(lo.cwiseMin(e));
        hi = hi.size() == 0 ? e : RealVector(hi.cwiseMax(e));
      }
      for (double e : others)
        for (Index k = 0; k < lo.size(); ++k)
          if (e >= lo(k) - opt.min_gap && e <= hi(k) + opt.min_gap) {
            std::ostringstream os;
            os << "theorem1_verify: a level of block " << i << " sweeps through the eigenvalue " << e
               << " of another block";
            throw SpectralCollision(os.str());
          }
      std::vector<PathSegment> segs;
      for (const auto& s : proto.loop.segments()) {
        segs.emplace_back(embed(s.h_start()), embed(s.h_end()), s.schedule(), s.duration());
      }
      rep.loops.emplace_back(std::move(segs));
    }
  }
  if (rep.loops.empty()) {
    const HermitianOperator h0(rep.h0);
    rep.loops.emplace_back(PathSegment(h0, h0, Schedule(), opt.loop_duration));
  }

  rep.net_unitary = identity(dim);
  for (const auto& loop : rep.loops) {
    const double gap = min_gap(loop, 401);
    if (gap < opt.min_gap) {
      std::ostringstream os;
      os << "theorem1_verify: levels of different blocks meet along a loop (gap " << gap << ")";
      throw SpectralCollision(os.str());
    }
    FrameTrack track = [&] {
      try {
        return track_frames(loop, opt.samples);
      } catch (const TrackingError& e) {
        throw SpectralCollision(std::string("theorem1_verify: ") + e.what());
      } catch (const ClusteringAmbiguity& e) {
        throw SpectralCollision(std::string("theorem1_verify: ") + e.what());
      }
    }();
    Matrix u;
    if (opt.mode == RunMode::exact) {
      u = parallel_transport_holonomy(track).net_unitary();
    } else {
      const EvolutionResult ev = evolve(loop, opt.steps_per_segment, false);
      rep.max_leakage =
          std::max(rep.max_leakage, geometric_decompose(loop, ev, track, opt.leakage_tolerance).off_block_residual);
      u = ev.total_unitary.matrix();
    }
    rep.net_unitary = u * rep.net_unitary;
  }

  rep.passed = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& b = dec.blocks()[i];
    Theorem1BlockReport br;
    br.d_a = b.d_a;
    br.d_b = b.d_b;
    br.requested = word_unitary(words[i], b.d_a);
    const Matrix ue = rep.net_unitary * b.embedding;
    br.block_unitary = b.embedding.adjoint() * ue;
    br.out_of_block = spectral_norm(ue - b.embedding * br.block_unitary);
    br.factorization = product_factorize(UnitaryOperator::closest(br.block_unitary), b.d_a, b.d_b);
    br.a_fidelity = trace_overlap(br.factorization.factor_a, br.requested);
    rep.passed = rep.passed && br.factorization.residual <= opt.residual_tolerance &&
                 br.a_fidelity >= 1.0 - opt.fidelity_tolerance;
    if (opt.enforce && br.factorization.residual > opt.residual_tolerance) {
      std::ostringstream os;
      os << "theorem1_verify: block " << i << " factorization residual " << br.factorization.residual
         << " exceeds " << opt.residual_tolerance;
      throw FactorizationFailure(os.str(), br.factorization.residual);
    }
    rep.blocks.push_back(std::move(br));
  }
  return rep;
}

}  // namespace hqc
