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

// Single-qubit Berry loop: the field direction n(phi) at fixed polar angle
// theta, swept once around the z axis as a polygon of interpolation segments.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hqc/evolution.hpp"
#include "hqc/holonomy.hpp"
#include "hqc/path.hpp"

namespace hqc {

inline HermitianOperator field_hamiltonian(double theta, double phi) {
  const Matrix h = std::sin(theta) * std::cos(phi) * pauli::X() + std::sin(theta) * std::sin(phi) * pauli::Y() +
                   std::cos(theta) * pauli::Z();
  return HermitianOperator(h);
}

/// Polygon loop through n_segments equally spaced azimuths. At theta = pi/2
/// every chord projects onto the equator, so the loop's solid angle is exact.
inline HamiltonianPath berry_loop(double theta, int n_segments = 64, double total_duration = 1.0,
                                  Schedule schedule = Schedule()) {
  if (n_segments < 3) throw InvalidArgument("berry_loop: need at least 3 segments");
  std::vector<HermitianOperator> v;
  for (int k = 0; k < n_segments; ++k) v.push_back(field_hamiltonian(theta, 2 * std::numbers::pi * k / n_segments));
  v.push_back(v.front());
  std::vector<PathSegment> segs;
  for (int k = 0; k < n_segments; ++k) segs.emplace_back(v[k], v[k + 1], schedule, total_duration / n_segments);
  return HamiltonianPath(std::move(segs));
}

/// Solid angle enclosed (on the +z side) by the geodesic polygon through the
/// loop's field directions, from the sum of its exterior angles.
inline double polygon_solid_angle(double theta, int n_segments) {
  auto dir = [&](int k) {
    const double phi = 2 * std::numbers::pi * k / n_segments;
    return Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  };
  double turning = 0.0;
  for (int k = 0; k < n_segments; ++k) {
    const Eigen::Vector3d a = dir(k - 1), b = dir(k), c = dir(k + 1);
    const Eigen::Vector3d t_in = (a.dot(b) * b - a).normalized();
    const Eigen::Vector3d t_out = (c - c.dot(b) * b).normalized();
    turning += std::atan2(t_in.cross(t_out).dot(b), t_in.dot(t_out));
  }
  return 2 * std::numbers::pi - turning;
}

struct BerryReport {
  double theta = 0.0;
  int segments = 0;
  /// arg of the ground-level holonomy from parallel transport.
  double transport_phase = 0.0;
  /// arg of e^{i omega} <g|U(T)|g> from full evolution at each duration.
  std::vector<double> durations;
  std::vector<double> dynamical_phases;
  /// First-order Richardson extrapolation of the dynamical phases in 1/T
  /// (last two durations).
  double extrapolated_phase = 0.0;
  /// Solid angle of the polygon; the cone value is 2 pi (1 - cos theta).
  double solid_angle = 0.0;
};

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double a) {
  a = std::remainder(a, 2 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2 * std::numbers::pi : a;
}

/// Distance between two phases on the circle.
inline double phase_distance(double a, double b) { return std::abs(wrap_phase(a - b)); }

inline BerryReport run_berry(double theta, int n_segments = 8, int samples = 4000,
                             const std::vector<double>& durations = {800.0, 1600.0}, int steps_per_segment = 2000) {
  BerryReport rep;
  rep.theta = theta;
  rep.segments = n_segments;
  rep.solid_angle = polygon_solid_angle(theta, n_segments);
  const HamiltonianPath loop = berry_loop(theta, n_segments);
  rep.transport_phase = std::arg(parallel_transport_holonomy(track_frames(loop, samples)).levels.front().geometric(0, 0));
  for (double t : durations) {
    const HamiltonianPath timed = loop.with_total_duration(t);
    const FrameTrack track = track_frames(timed, samples);
    const EvolutionResult ev = evolve(timed, steps_per_segment, false);
    const HolonomyResult dyn = geometric_decompose(timed, ev, track, 1e-2);
    rep.durations.push_back(t);
    rep.dynamical_phases.push_back(std::arg(dyn.levels.front().geometric(0, 0)));
  }
  if (rep.durations.size() >= 2) {
    const std::size_t n = rep.durations.size();
    const double t1 = rep.durations[n - 2], t2 = rep.durations[n - 1];
    const double p1 = rep.dynamical_phases[n - 2];
    const double p2 = p1 + wrap_phase(rep.dynamical_phases[n - 1] - p1);
    rep.extrapolated_phase = wrap_phase((t2 * p2 - t1 * p1) / (t2 - t1));
  } else if (!rep.durations.empty()) {
    rep.extrapolated_phase = rep.dynamical_phases.front();
  }
  return rep;
}

}  // namespace hqc
