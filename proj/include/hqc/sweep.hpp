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

// Convergence sweeps of a gate protocol over loop durations.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>
#include <vector>

#include "hqc/protocols.hpp"

namespace hqc {

struct SweepRow {
  double T = 0.0;
  double leakage = 0.0;
  /// Smallest per-level fidelity of the evolved blocks (before
  /// unitarization) against exact transport.
  double fidelity_vs_exact = 0.0;
  double factorization_residual = 0.0;
  double wall_time_s = 0.0;
};

struct SweepOptions {
  int steps_per_segment = 2000;
  int samples = 4000;
  /// Worker threads; 0 picks the hardware concurrency.
  int jobs = 0;
};

inline void validate_sweep_durations(const std::vector<double>& ts) {
  if (ts.size() < 3) throw InvalidArgument("sweep: need at least 3 durations");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!(ts[k] > 0.0) || !std::isfinite(ts[k])) throw InvalidArgument("sweep: durations must be positive and finite");
    if (k > 0 && !(ts[k] > ts[k - 1])) throw InvalidArgument("sweep: durations must be strictly increasing");
  }
}

inline SweepRow sweep_point(const GateProtocol& protocol, double t, const SweepOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  RunOptions o;
  o.total_duration = t;
  o.samples = opt.samples;
  o.steps_per_segment = opt.steps_per_segment;
  o.residual_tolerance = std::numeric_limits<double>::infinity();
  o.leakage_tolerance = std::numeric_limits<double>::infinity();
  const GateRunReport exact = run_gate_protocol(protocol, o);
  o.mode = RunMode::dynamical;
  const GateRunReport dyn = run_gate_protocol(protocol, o);
  SweepRow row;
  row.T = t;
  row.leakage = dyn.leakage;
  row.fidelity_vs_exact = std::clamp(min_level_fidelity(exact.levels, dyn.levels, true), 0.0, 1.0);
  row.factorization_residual = std::clamp(dyn.factorization.residual, 0.0, 1.0);
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

/// One row per duration, in the order given. Points run concurrently.
inline std::vector<SweepRow> run_sweep(const GateProtocol& protocol, const std::vector<double>& ts,
                                       const SweepOptions& opt = {}) {
  validate_sweep_durations(ts);
  std::vector<SweepRow> rows(ts.size());
  std::vector<std::exception_ptr> errors(ts.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(ts.size(), opt.jobs > 0 ? opt.jobs : hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < ts.size(); k = next++) {
          try {
            rows[k] = sweep_point(protocol, ts[k], opt);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

/// Least-squares slope of log(y) against log(x). Values below `floor` are
/// clamped to it so exact agreement does not produce -inf.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor = 1e-16) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("loglog_slope: need matching samples, at least 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(std::max(y[k], floor));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw InvalidArgument("loglog_slope: abscissae are all equal");
  return (n * sxy - sx * sy) / den;
}

inline double infidelity_slope(const std::vector<SweepRow>& rows) {
  std::vector<double> t, inf;
  for (const auto& r : rows) {
    t.push_back(r.T);
    inf.push_back(1.0 - r.fidelity_vs_exact);
  }
  return loglog_slope(t, inf);
}

/// CSV with 12 significant digits. Without timing the wall-time column is 0
/// so repeated runs are byte-identical.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, bool timing = true) {
  const auto old = os.precision(12);
  os << "T,leakage,fidelity_vs_exact,factorization_residual,wall_time_s\n";
  for (const auto& r : rows) {
    os << r.T << ',' << r.leakage << ',' << r.fidelity_vs_exact << ',' << r.factorization_residual << ','
       << (timing ? r.wall_time_s : 0.0) << '\n';
  }
  os.precision(old);
}

}  // namespace hqc
