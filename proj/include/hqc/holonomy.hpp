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

// Per-eigenspace geometric transformations. Eigenframes are carried along a
// path in the discrete parallel-transport gauge (every overlap between
// consecutive frames is Hermitian positive), so the ordered product of frame
// transfers realizes the path-ordered exponential of the adiabatic
// connection without ever differentiating a basis.

#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "hqc/evolution.hpp"
#include "hqc/operator.hpp"
#include "hqc/path.hpp"
#include "hqc/tracking.hpp"

namespace hqc {

/// Smallest singular value of a consecutive-frame overlap accepted by the tracker.
inline constexpr double kMinOverlapSingularValue = 0.9;
/// Pre-unitarization defect above which a holonomy is rejected.
inline constexpr double kMaxHolonomyDefect = 1e-3;

struct FrameSample {
  double time = 0.0;
  /// Levels in tracked order (level n continues level n of the first sample),
  /// bases in the parallel-transport gauge.
  std::vector<SpectralLevel> levels;
};

struct FrameTrack {
  std::vector<FrameSample> samples;
  /// Sample index where each segment starts; last entry is samples.size()-1.
  std::vector<std::size_t> segment_first;
  bool closed = false;
  /// Eigensolver bases of the endpoint Hamiltonian in tracked level order,
  /// used to express open-path transfers.
  std::vector<Matrix> endpoint_bases;
  /// Smallest overlap singular value met along the track.
  double min_overlap_singular_value = 1.0;

  std::size_t level_count() const { return samples.front().levels.size(); }
  const FrameSample& initial() const { return samples.front(); }
  const FrameSample& final() const { return samples.back(); }
};

namespace detail {

/// Re-gauges `next` (N x d) so that previous^dagger * result is Hermitian
/// positive. Returns the smallest singular value of the raw overlap.
inline double parallel_gauge(const Matrix& previous, Matrix& next) {
  const Matrix overlap = previous.adjoint() * next;
  Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullU | Eigen::ComputeFullV);
  next = next * (svd.matrixV() * svd.matrixU().adjoint());
  return svd.singularValues().minCoeff();
}

inline void check_initial_bases(const SpectralFrame& frame, const std::vector<Matrix>& bases) {
  if (bases.size() != frame.size()) throw InvalidArgument("initial frame: one basis per level required");
  for (std::size_t n = 0; n < bases.size(); ++n) {
    const Matrix& b = bases[n];
    if (b.rows() != frame.dim() || b.cols() != frame.level(n).degeneracy()) {
      throw DimensionMismatch("initial frame: basis shape does not match level degeneracy");
    }
    if (max_abs(b.adjoint() * b - identity(b.cols())) > 1e-10 ||
        max_abs(frame.level(n).projector() * b - b) > 1e-8) {
      std::ostringstream os;
      os << "initial frame: basis " << n << " is not an orthonormal basis of its eigenspace";
      throw InvalidArgument(os.str());
    }
  }
}

/// Composite Simpson over each segment of the track for level n's energy.
inline double integrate_energy(const FrameTrack& track, std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < track.segment_first.size(); ++k) {
    const std::size_t a = track.segment_first[k];
    const std::size_t b = track.segment_first[k + 1];
    const double h = (track.samples[b].time - track.samples[a].time) / static_cast<double>(b - a);
    double s = track.samples[a].levels[n].energy + track.samples[b].levels[n].energy;
    for (std::size_t j = a + 1; j < b; ++j) {
      s += ((j - a) % 2 == 1 ? 4.0 : 2.0) * track.samples[j].levels[n].energy;
    }
    total += s * h / 3.0;
  }
  return total;
}

}  // namespace detail

/// Spectral frames on a segment-aligned grid of about `n_samples` points, each
/// level re-gauged by the unitary polar factor of its overlap with the
/// previous sample. `initial_bases`, when given, fixes the frame at t = 0
/// (one orthonormal basis per level of H(0), ascending energy).
inline FrameTrack track_frames(const HamiltonianPath& path, int n_samples,
                               const std::vector<Matrix>* initial_bases = nullptr,
                               double cluster_tol = kDefaultClusterTol) {
  const SampleGrid grid = make_grid(path, n_samples);
  FrameTrack track;
  track.segment_first = grid.segment_first;
  track.closed = path.is_loop();

  SpectralFrame first = spectral_decompose(path.start(), cluster_tol);
  if (first.size() < 1) throw TrackingError("track_frames: empty spectrum");
  std::vector<SpectralLevel> current = first.levels();
  if (initial_bases != nullptr) {
    detail::check_initial_bases(first, *initial_bases);
    for (std::size_t n = 0; n < current.size(); ++n) current[n].basis = (*initial_bases)[n];
  }
  track.samples.reserve(grid.points.size());
  track.samples.push_back({0.0, current});

  std::vector<std::size_t> map;
  for (std::size_t k = 1; k < grid.points.size(); ++k) {
    const SpectralFrame next =
        spectral_decompose(HermitianOperator(matrix_at(path, grid.points[k])), cluster_tol);
    map = match_levels(current, next);
    std::vector<SpectralLevel> levels(current.size());
    for (std::size_t n = 0; n < current.size(); ++n) {
      levels[n] = next.level(map[n]);
      const double smin = detail::parallel_gauge(current[n].basis, levels[n].basis);
      track.min_overlap_singular_value = std::min(track.min_overlap_singular_value, smin);
      if (smin < kMinOverlapSingularValue) {
        std::ostringstream os;
        os << "track_frames: overlap singular value " << smin << " at t = " << grid.points[k].time
           << " for level " << n << "; increase the number of samples";
        throw TrackingError(os.str());
      }
    }
    current = std::move(levels);
    track.samples.push_back({grid.points[k].time, current});
  }

  const SpectralFrame last = spectral_decompose(path.end(), cluster_tol);
  map = match_levels(current, last);
  for (std::size_t n = 0; n < current.size(); ++n) track.endpoint_bases.push_back(last.level(map[n]).basis);
  if (track.closed) {
    for (std::size_t n = 0; n < current.size(); ++n) {
      if (max_abs(current[n].projector() - track.initial().levels[n].projector()) > 1e-6) {
        throw TrackingError("track_frames: loop permutes its eigenspaces");
      }
    }
  }
  return track;
}

struct LevelHolonomy {
  /// Energy of the level at t = 0.
  double energy = 0.0;
  /// Frame (N x d) in which `geometric` is expressed.
  Matrix initial_basis;
  /// Geometric unitary U_n (d x d). For open paths, the transfer from the
  /// initial frame to the endpoint eigensolver frame.
  Matrix geometric;
  /// omega_n = integral of the level energy over the path; U(T) carries e^{-i omega_n}.
  double dynamical_phase = 0.0;
  /// The block before unitarization (d x d).
  Matrix raw;
  /// max|M^dagger M - I| of the block before unitarization.
  double unitarity_defect = 0.0;
};

struct HolonomyResult {
  std::vector<LevelHolonomy> levels;
  bool closed = false;
  /// max_n |(I - Pi_n) U Pi_n|_2; only set by geometric_decompose.
  double off_block_residual = 0.0;

  Index dim() const { return levels.front().initial_basis.rows(); }

  /// sum_n B_n U_n B_n^dagger (geometric part only). Loops only.
  Matrix geometric_unitary() const {
    Matrix u = Matrix::Zero(dim(), dim());
    for (const auto& l : levels) u += l.initial_basis * l.geometric * l.initial_basis.adjoint();
    return u;
  }

  /// sum_n e^{-i omega_n} B_n U_n B_n^dagger: the adiabatic loop unitary. Loops only.
  Matrix net_unitary() const {
    Matrix u = Matrix::Zero(dim(), dim());
    for (const auto& l : levels) {
      u += std::polar(1.0, -l.dynamical_phase) * (l.initial_basis * l.geometric * l.initial_basis.adjoint());
    }
    return u;
  }
};

namespace detail {
inline void unitarize_block(LevelHolonomy& lh) {
  lh.raw = lh.geometric;
  lh.unitarity_defect = unitarity_defect(lh.geometric);
  if (lh.unitarity_defect > kMaxHolonomyDefect) {
    std::ostringstream os;
    os << "holonomy block defect " << lh.unitarity_defect << " exceeds " << kMaxHolonomyDefect;
    throw TrackingError(os.str());
  }
  lh.geometric = polar_unitary(lh.geometric);
}
}  // namespace detail

/// Ordered product of parallel-transport frame transfers, closed against the
/// initial frame for loops. Dynamical phases by composite Simpson quadrature
/// of the tracked level energies.
inline HolonomyResult parallel_transport_holonomy(const FrameTrack& track) {
  HolonomyResult res;
  res.closed = track.closed;
  for (std::size_t n = 0; n < track.level_count(); ++n) {
    LevelHolonomy lh;
    const SpectralLevel& first = track.initial().levels[n];
    lh.energy = first.energy;
    lh.initial_basis = first.basis;
    const Matrix& target = track.closed ? first.basis : track.endpoint_bases[n];
    lh.geometric = target.adjoint() * track.final().levels[n].basis;
    lh.dynamical_phase = detail::integrate_energy(track, n);
    detail::unitarize_block(lh);
    res.levels.push_back(std::move(lh));
  }
  return res;
}

/// Splits the evolved loop unitary into per-level geometric blocks:
/// U_n = e^{i omega_n} B_n^dagger U(T) B_n, unitarized. Throws
/// AdiabaticityFailure when the off-block residual exceeds `tolerance`.
inline HolonomyResult geometric_decompose(const HamiltonianPath& path, const EvolutionResult& evolution,
                                          const FrameTrack& track, double tolerance = 1e-3) {
  if (!path.is_loop()) throw PreconditionError("geometric_decompose: path is not a loop");
  if (evolution.total_unitary.dim() != path.dim()) {
    throw DimensionMismatch("geometric_decompose: evolution and path differ in dimension");
  }
  const Matrix& u = evolution.total_unitary.matrix();
  HolonomyResult res;
  res.closed = true;
  for (std::size_t n = 0; n < track.level_count(); ++n) {
    LevelHolonomy lh;
    const SpectralLevel& first = track.initial().levels[n];
    lh.energy = first.energy;
    lh.initial_basis = first.basis;
    lh.dynamical_phase = detail::integrate_energy(track, n);
    const Matrix ub = u * first.basis;
    lh.geometric = std::polar(1.0, lh.dynamical_phase) * (first.basis.adjoint() * ub);
    res.off_block_residual =
        std::max(res.off_block_residual, spectral_norm(ub - first.basis * (first.basis.adjoint() * ub)));
    lh.raw = lh.geometric;
    lh.unitarity_defect = unitarity_defect(lh.geometric);
    lh.geometric = polar_unitary(lh.geometric);
    res.levels.push_back(std::move(lh));
  }
  if (res.off_block_residual > tolerance) {
    std::ostringstream os;
    os << "geometric_decompose: off-block residual " << res.off_block_residual << " exceeds tolerance "
       << tolerance;
    throw AdiabaticityFailure(os.str(), res.off_block_residual);
  }
  return res;
}

/// Smallest per-level fidelity between two holonomy results of the same loop
/// expressed in the same frame. With `raw` set, the second result's blocks
/// are taken before unitarization, so amplitude lost to other levels counts
/// against the agreement.
inline double min_level_fidelity(const HolonomyResult& a, const HolonomyResult& b, bool raw = false) {
  if (a.levels.size() != b.levels.size()) throw DimensionMismatch("holonomy results differ in level count");
  double f = 1.0;
  for (std::size_t n = 0; n < a.levels.size(); ++n) {
    f = std::min(f, trace_overlap(a.levels[n].geometric, raw ? b.levels[n].raw : b.levels[n].geometric));
  }
  return f;
}

}  // namespace hqc
