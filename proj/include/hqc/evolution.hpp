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

// Time-ordered propagation along a path and adiabatic leakage diagnostics.

#pragma once

#include <vector>

#include "hqc/operator.hpp"
#include "hqc/path.hpp"
#include "hqc/tracking.hpp"

namespace hqc {

struct EvolutionResult {
  UnitaryOperator total_unitary;
  double duration = 0.0;
  long steps = 0;
  /// max|U_N - U_2N| from one step-doubling pass; negative when not computed.
  double step_error_estimate = -1.0;
};

/// Product of exp(-i H(t_mid) dt) over `steps_per_segment` uniform sub-steps
/// of every segment (exponential midpoint rule, second order).
inline Matrix propagate(const HamiltonianPath& path, int steps_per_segment) {
  Matrix u = identity(path.dim());
  for (const auto& seg : path.segments()) {
    const double dt = seg.duration() / steps_per_segment;
    for (int j = 0; j < steps_per_segment; ++j) {
      u = propagator_matrix(seg.matrix_at((j + 0.5) * dt), dt) * u;
    }
  }
  return u;
}

inline EvolutionResult evolve(const HamiltonianPath& path, int steps_per_segment,
                              bool estimate_error = true) {
  if (steps_per_segment < 1) throw InvalidArgument("evolve: steps_per_segment must be >= 1");
  Matrix u = propagate(path, steps_per_segment);
  double err = -1.0;
  if (estimate_error) err = max_abs(u - propagate(path, 2 * steps_per_segment));
  return EvolutionResult{UnitaryOperator(std::move(u)), path.total_duration(),
                         static_cast<long>(steps_per_segment) * static_cast<long>(path.segment_count()),
                         err};
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

struct LeakageReport {
  /// max over levels of |(I - Pi_n(end)) U Pi_n(0)|_2.
  double leakage = 0.0;
  std::vector<double> per_level;
  EvolutionResult evolution;
};

/// Follows every level of the initial frame to the endpoint by continuous
/// projector matching over `tracking_samples` grid points (0 picks 64 per
/// segment) and measures how much of it the evolution leaves behind.
inline LeakageReport leakage_report(const HamiltonianPath& path, int steps_per_segment,
                                    int tracking_samples = 0,
                                    double cluster_tol = kDefaultClusterTol) {
  if (tracking_samples == 0) tracking_samples = 64 * static_cast<int>(path.segment_count()) + 1;
  const SampleGrid grid = make_grid(path, tracking_samples);
  const SpectralFrame initial = spectral_decompose(path.start(), cluster_tol);
  std::vector<SpectralLevel> current = initial.levels();
  for (std::size_t k = 1; k < grid.points.size(); ++k) {
    const SpectralFrame next =
        spectral_decompose(HermitianOperator(matrix_at(path, grid.points[k])), cluster_tol);
    const auto map = match_levels(current, next);
    for (std::size_t n = 0; n < current.size(); ++n) current[n] = next.level(map[n]);
  }

  LeakageReport rep{0.0, {}, evolve(path, steps_per_segment, false)};
  const Matrix& u = rep.evolution.total_unitary.matrix();
  const Index dim = path.dim();
  for (std::size_t n = 0; n < current.size(); ++n) {
    const Matrix outside = identity(dim) - current[n].projector();
    const double l = spectral_norm(outside * u * initial.level(n).basis);
    rep.per_level.push_back(l);
    rep.leakage = std::max(rep.leakage, l);
  }
  return rep;
}

inline double adiabatic_leakage(const HamiltonianPath& path, int steps_per_segment,
                                int tracking_samples = 0) {
  return leakage_report(path, steps_per_segment, tracking_samples).leakage;
}

}  // namespace hqc
