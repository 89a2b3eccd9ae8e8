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

// Sampling grids along a path and level correspondence between neighbouring
// spectral frames.

#pragma once

#include <sstream>
#include <vector>

#include "hqc/operator.hpp"
#include "hqc/path.hpp"

namespace hqc {

struct GridPoint {
  double time = 0.0;
  std::size_t segment = 0;
  double local_time = 0.0;
};

/// Sample grid aligned to segment joins. Segment k receives an even number of
/// intervals (at least 2) roughly proportional to its share of the duration,
/// so that about `n_samples` points cover the path and Simpson's rule applies
/// on every segment. Joins are sampled once, attributed to the later segment.
struct SampleGrid {
  std::vector<GridPoint> points;
  /// Index into `points` where segment k starts; the last entry is points.size()-1.
  std::vector<std::size_t> segment_first;
};

inline SampleGrid make_grid(const HamiltonianPath& path, int n_samples) {
  if (n_samples < 2) throw InvalidArgument("sample grid: need at least 2 samples");
  SampleGrid grid;
  const double total = path.total_duration();
  const auto& segs = path.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double share = segs[k].duration() / total;
    int m = static_cast<int>(std::lround((n_samples - 1) * share));
    m = std::max(m, 2);
    if (m % 2 != 0) ++m;
    grid.segment_first.push_back(grid.points.size());
    const double t0 = path.segment_start(k);
    for (int j = 0; j < m; ++j) {
      const double local = segs[k].duration() * j / m;
      grid.points.push_back({t0 + local, k, local});
    }
  }
  const std::size_t last = segs.size() - 1;
  grid.points.push_back({total, last, segs[last].duration()});
  grid.segment_first.push_back(grid.points.size() - 1);
  return grid;
}

inline Matrix matrix_at(const HamiltonianPath& path, const GridPoint& p) {
  return path.segments()[p.segment].matrix_at(p.local_time);
}

/// Minimum normalized projector overlap tr(Pi_n Pi'_m)/d_n accepted as a match.
inline constexpr double kMatchOverlap = 0.5;

/// For each level of `previous` (in its given order), the index of the level
/// of `next` that continues it, chosen by maximum projector overlap.
inline std::vector<std::size_t> match_levels(const std::vector<SpectralLevel>& previous,
                                             const SpectralFrame& next) {
  if (previous.size() != next.size()) {
    std::ostringstream os;
    os << "level tracking: level count changed from " << previous.size() << " to " << next.size();
    throw TrackingError(os.str());
  }
  std::vector<std::size_t> map(previous.size());
  std::vector<bool> taken(next.size(), false);
  for (std::size_t n = 0; n < previous.size(); ++n) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t m = 0; m < next.size(); ++m) {
      const double ov = (previous[n].basis.adjoint() * next.level(m).basis).squaredNorm() /
                        static_cast<double>(previous[n].degeneracy());
      if (ov > best) {
        best = ov;
        arg = m;
      }
    }
    if (best < kMatchOverlap || taken[arg] ||
        next.level(arg).degeneracy() != previous[n].degeneracy()) {
      std::ostringstream os;
      os << "level tracking: no unambiguous continuation for level " << n << " (best overlap " << best
         << "); crossing or undersampling";
      throw TrackingError(os.str());
    }
    taken[arg] = true;
    map[n] = arg;
  }
  return map;
}

}  // namespace hqc
