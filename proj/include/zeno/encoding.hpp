// Copyright 2026 The zenogate Authors
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

// Failure accounting for the two-photon logical-qubit encoding, where a
// physical CNOT failure measures both of its qubits and each measured qubit
// is restored by one more CNOT.
//
// One logical CNOT = CNOT(q1, q1') and CNOT(q2, q1'). A failed physical CNOT
// triggers two corrective CNOTs; the logical gate fails when any corrective
// CNOT fails. A failed correction is terminal.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/parallel.hpp"

namespace zeno::encoding {

inline void check_probability(double p, const char *where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(where) + ": probability must be in [0, 1]");
}

/// Leading-order logical failure 4 p^2.
inline double analytic_logical_failure(double p) {
  check_probability(p, "analytic_logical_failure");
  return 4.0 * p * p;
}

/// The 4 p^2 estimate assumes p << 1; past the threshold it is only a trend.
inline bool beyond_small_p_regime(double p) { return p > 0.25; }

/// Exact failure probability of the event tree, by enumerating all 2^6
/// outcomes of the six physical CNOTs (two primaries, two corrections each).
inline double exact_tree_failure(double p) {
  check_probability(p, "exact_tree_failure");
  double total = 0.0;
  for (unsigned mask = 0; mask < 64; ++mask) {
    double weight = 1.0;
    for (unsigned g = 0; g < 6; ++g)
      weight *= (mask >> g & 1u) ? p : 1.0 - p;
    // bit 0: CNOT1, bits 1-2: its corrections; bit 3: CNOT2, bits 4-5: its corrections
    const bool branch1 = (mask & 1u) && (mask & 0b110u);
    const bool branch2 = (mask & 0b1000u) && (mask & 0b110000u);
    if (branch1 || branch2)
      total += weight;
  }
  return total;
}

/// p_{k+1} = 4 p_k^2, levels entries (level 1 first).
inline std::vector<double> concatenate(double p0, int levels) {
  check_probability(p0, "concatenate");
  if (levels < 1)
    throw std::invalid_argument("concatenate: levels must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(levels));
  double p = p0;
  for (int k = 0; k < levels; ++k) {
    p = 4.0 * p * p;
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo.
//
// Trials are split into kChunks fixed chunks. Chunk i draws from a
// std::mt19937_64 seeded with splitmix64(seed + i * golden_gamma), so the
// estimate depends only on (p, trials, seed), never on the thread count.

inline constexpr std::size_t kChunks = 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(chunk));
}

/// Uniform in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One logical CNOT; true when it fails.
inline bool sample_logical_cnot(double p, std::mt19937_64 &rng) {
  auto fails = [&] { return unit_uniform(rng) < p; };
  bool failed = false;
  for (int primary = 0; primary < 2; ++primary) {
    if (fails()) {
      const bool c1 = fails();
      const bool c2 = fails();
      failed = failed || c1 || c2;
    }
  }
  return failed;
}

struct ThresholdReport {
  double p = 0.0;
  double analytic_p_logical = 0.0;
  double exact_tree = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

inline ThresholdReport monte_carlo_logical_failure(double p, std::uint64_t trials,
                                                   std::uint64_t seed) {
  check_probability(p, "monte_carlo_logical_failure");
  if (trials < 1)
    throw std::invalid_argument("monte_carlo_logical_failure: trials must be >= 1");
  const auto counts = parallel_map(kChunks, [&](std::size_t chunk) {
    const std::uint64_t begin = trials * chunk / kChunks;
    const std::uint64_t end = trials * (chunk + 1) / kChunks;
    std::mt19937_64 rng(chunk_seed(seed, chunk));
    std::uint64_t failures = 0;
    for (std::uint64_t t = begin; t < end; ++t)
      failures += sample_logical_cnot(p, rng) ? 1 : 0;
    return failures;
  });
  std::uint64_t failures = 0;
  for (auto c : counts)
    failures += c;

  ThresholdReport r;
  r.p = p;
  r.analytic_p_logical = analytic_logical_failure(p);
  r.exact_tree = exact_tree_failure(p);
  r.mc_estimate = static_cast<double>(failures) / static_cast<double>(trials);
  r.mc_stderr = std::sqrt(r.mc_estimate * (1.0 - r.mc_estimate) / static_cast<double>(trials));
  r.trials = trials;
  r.seed = seed;
  return r;
}

struct ThresholdRow {
  ThresholdReport report;
  int sign = 0; ///< sign of (4 p^2 - p): -1 below threshold, +1 above
};

/// Grid point i uses seed chunk_seed(seed, i) so points are independent.
inline std::vector<ThresholdRow> threshold_sweep(const std::vector<double> &grid,
                                                 std::uint64_t trials, std::uint64_t seed) {
  if (grid.empty())
    throw std::invalid_argument("threshold_sweep: empty grid");
  for (double p : grid)
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("threshold_sweep: grid points must lie in (0, 1)");
  std::vector<ThresholdRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ThresholdRow row;
    row.report = monte_carlo_logical_failure(grid[i], trials, chunk_seed(seed, i));
    row.report.seed = seed;
    const double diff = row.report.analytic_p_logical - grid[i];
    row.sign = (diff > 0.0) - (diff < 0.0);
    rows.push_back(row);
  }
  return rows;
}

} // namespace zeno::encoding
