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

// Control curves: scheduled interpolations between Hamiltonians, their
// concatenation into paths and loops, conjugation, and gap scanning.

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hqc/operator.hpp"

namespace hqc {

enum class ScheduleKind { linear, cosine };

/// Interpolation weights (f, g) on s in [0, 1] with f(0)=g(1)=1, f(1)=g(0)=0.
/// Both supported kinds satisfy f + g = 1 and f(1-s) = g(s).
class Schedule {
 public:
  constexpr Schedule(ScheduleKind kind = ScheduleKind::cosine) : kind_(kind) {}

  ScheduleKind kind() const { return kind_; }

  double f(double s) const {
    if (kind_ == ScheduleKind::linear) return 1.0 - s;
    const double c = std::cos(0.5 * std::numbers::pi * s);
    return c * c;
  }
  double g(double s) const {
    if (kind_ == ScheduleKind::linear) return s;
    const double c = std::sin(0.5 * std::numbers::pi * s);
    return c * c;
  }
  double df(double s) const {
    if (kind_ == ScheduleKind::linear) return -1.0;
    return -0.5 * std::numbers::pi * std::sin(std::numbers::pi * s);
  }
  double dg(double s) const { return -df(s); }

  std::string name() const { return kind_ == ScheduleKind::linear ? "linear" : "cosine"; }

  friend bool operator==(Schedule a, Schedule b) { return a.kind_ == b.kind_; }

 private:
  ScheduleKind kind_;
};

/// H(t) = f(t/T) h_start + g(t/T) h_end for t in [0, T].
class PathSegment {
 public:
  PathSegment(HermitianOperator h_start, HermitianOperator h_end, Schedule schedule, double duration)
      : start_(std::move(h_start)), end_(std::move(h_end)), schedule_(schedule), duration_(duration) {
    if (start_.dim() != end_.dim()) throw DimensionMismatch("segment endpoints differ in dimension");
    if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
      throw InvalidArgument("segment duration must be positive and finite");
    }
  }

  const HermitianOperator& h_start() const { return start_; }
  const HermitianOperator& h_end() const { return end_; }
  Schedule schedule() const { return schedule_; }
  double duration() const { return duration_; }
  Index dim() const { return start_.dim(); }

  /// Raw matrix of H(t); cheaper than evaluate() in inner loops.
  Matrix matrix_at(double t) const {
    const double s = std::clamp(t / duration_, 0.0, 1.0);
    return schedule_.f(s) * start_.matrix() + schedule_.g(s) * end_.matrix();
  }
  HermitianOperator evaluate(double t) const { return HermitianOperator(matrix_at(t)); }

  Matrix derivative_at(double t) const {
    const double s = std::clamp(t / duration_, 0.0, 1.0);
    return (schedule_.df(s) * start_.matrix() + schedule_.dg(s) * end_.matrix()) / duration_;
  }

  /// Time reversal H'(t) = H(T - t), which for the supported schedules is the
  /// segment with swapped endpoints.
  PathSegment reversed() const { return PathSegment(end_, start_, schedule_, duration_); }

  PathSegment conjugated(const UnitaryOperator& v) const {
    if (v.dim() != dim()) throw DimensionMismatch("conjugation unitary has wrong dimension");
    const Matrix& m = v.matrix();
    return PathSegment(HermitianOperator(m * start_.matrix() * m.adjoint()),
                       HermitianOperator(m * end_.matrix() * m.adjoint()), schedule_, duration_);
  }

  PathSegment with_duration(double duration) const {
    return PathSegment(start_, end_, schedule_, duration);
  }

 private:
  HermitianOperator start_;
  HermitianOperator end_;
  Schedule schedule_;
  double duration_;
};

inline PathSegment segment(const HermitianOperator& h0, const HermitianOperator& h1,
                           Schedule schedule = Schedule(), double duration = 1.0) {
  return PathSegment(h0, h1, schedule, duration);
}

/// Tolerance for endpoint continuity and loop closure.
inline constexpr double kJoinTolerance = 1e-12;

class HamiltonianPath {
 public:
  explicit HamiltonianPath(std::vector<PathSegment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw InvalidArgument("a path needs at least one segment");
    offsets_.reserve(segments_.size() + 1);
    offsets_.push_back(0.0);
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      if (segments_[k].dim() != segments_[0].dim()) {
        throw DimensionMismatch("path segments differ in dimension");
      }
      if (k > 0) {
        const double jump = max_distance(segments_[k - 1].h_end(), segments_[k].h_start());
        if (!(jump <= kJoinTolerance)) {
          std::ostringstream os;
          os << "discontinuous join between segments " << k - 1 << " and " << k
             << " (max-norm jump " << jump << ")";
          throw DiscontinuousJoin(os.str(), k - 1, jump);
        }
      }
      offsets_.push_back(offsets_.back() + segments_[k].duration());
    }
  }

  HamiltonianPath(PathSegment single) : HamiltonianPath(std::vector<PathSegment>{std::move(single)}) {}

  const std::vector<PathSegment>& segments() const { return segments_; }
  std::size_t segment_count() const { return segments_.size(); }
  double total_duration() const { return offsets_.back(); }
  /// Start time of segment k; segment_start(segment_count()) is the total duration.
  double segment_start(std::size_t k) const { return offsets_.at(k); }
  Index dim() const { return segments_.front().dim(); }

  const HermitianOperator& start() const { return segments_.front().h_start(); }
  const HermitianOperator& end() const { return segments_.back().h_end(); }

  bool is_loop() const { return max_distance(start(), end()) <= kJoinTolerance; }

  /// Index of the segment that owns time t; joins belong to the later segment.
  std::size_t segment_index(double t) const {
    auto it = std::upper_bound(offsets_.begin() + 1, offsets_.end() - 1, t);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
  }

  Matrix matrix_at(double t) const {
    const std::size_t k = segment_index(t);
    return segments_[k].matrix_at(t - offsets_[k]);
  }
  HermitianOperator evaluate(double t) const { return HermitianOperator(matrix_at(t)); }

  HamiltonianPath reversed() const {
    std::vector<PathSegment> out;
    out.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) out.push_back(it->reversed());
    return HamiltonianPath(std::move(out));
  }

  /// Same curve with every segment duration scaled so the total is `total`.
  HamiltonianPath with_total_duration(double total) const {
    if (!(total > 0.0)) throw InvalidArgument("total duration must be positive");
    const double scale = total / total_duration();
    std::vector<PathSegment> out;
    out.reserve(segments_.size());
    for (const auto& s : segments_) out.push_back(s.with_duration(s.duration() * scale));
    return HamiltonianPath(std::move(out));
  }

 private:
  std::vector<PathSegment> segments_;
  std::vector<double> offsets_;
};

/// Joins paths end to start. Throws DiscontinuousJoin naming the left path of
/// the first offending pair.
inline HamiltonianPath concat(const std::vector<HamiltonianPath>& paths) {
  if (paths.empty()) throw InvalidArgument("concat: no paths given");
  std::vector<PathSegment> all;
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (p > 0) {
      if (paths[p].dim() != paths[p - 1].dim()) throw DimensionMismatch("concat: dimension mismatch");
      const double jump = max_distance(paths[p - 1].end(), paths[p].start());
      if (!(jump <= kJoinTolerance)) {
        std::ostringstream os;
        os << "concat: path " << p - 1 << " ends " << jump << " (max norm) away from the start of path " << p;
        throw DiscontinuousJoin(os.str(), p - 1, jump);
      }
    }
    all.insert(all.end(), paths[p].segments().begin(), paths[p].segments().end());
  }
  return HamiltonianPath(std::move(all));
}

/// Replaces every H(t) by V H(t) V^dagger.
inline HamiltonianPath conjugate_path(const HamiltonianPath& path, const UnitaryOperator& v) {
  if (v.dim() != path.dim()) throw DimensionMismatch("conjugate_path: dimension mismatch");
  std::vector<PathSegment> out;
  out.reserve(path.segment_count());
  for (const auto& s : path.segments()) out.push_back(s.conjugated(v));
  return HamiltonianPath(std::move(out));
}

/// n uniformly spaced times covering [0, T] including both ends.
inline std::vector<double> uniform_times(double total, int n_samples) {
  std::vector<double> t(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) t[k] = total * k / (n_samples - 1);
  return t;
}

/// Smallest adjacent-level gap over n uniformly sampled times. A sample with
/// fewer than two levels, or an unresolvable near-degeneracy, counts as 0.
inline double min_gap(const HamiltonianPath& path, int n_samples,
                      double cluster_tol = kDefaultClusterTol) {
  if (n_samples < 2) throw InvalidArgument("min_gap: need at least 2 samples");
  double gap = std::numeric_limits<double>::infinity();
  for (double t : uniform_times(path.total_duration(), n_samples)) {
    try {
      gap = std::min(gap, spectral_decompose(path.evaluate(t), cluster_tol).min_gap());
    } catch (const ClusteringAmbiguity&) {
      gap = 0.0;
    }
  }
  return gap;
}

}  // namespace hqc
