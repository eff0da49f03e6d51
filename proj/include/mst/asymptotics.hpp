/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Almost-sure limits of the gap and degree profiles, and seeded Monte Carlo
// experiments that measure how close finite trees get to them.
//
// Trials run through an OpenMP kernel; *_serial variants are the reference
// implementation and must produce bit-identical results.

#ifndef MST_ASYMPTOTICS_HPP
#define MST_ASYMPTOTICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace mst {

struct LimitProfile {
  unsigned m = 0;
  std::vector<double> v;       // gap fractions, length 2m-2
  std::vector<double> v_star;  // degree fractions, length m+1
  double leaf_fraction = 0.0;
  double node_fraction = 0.0;
  /// Non-leaves: node_fraction - leaf_fraction = 1/((m+1)(H_m-1)).
  double protected_fraction = 0.0;
  /// The constant 1/(2(m+1)(H_m-1)) often quoted for 1-protected nodes.
  /// Half of protected_fraction; reported for comparison only.
  double quoted_protected_fraction = 0.0;
  double full_fraction = 0.0;
};

LimitProfile limit_profile(unsigned m);

struct ConvergenceReport {
  unsigned m = 0;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> mean_gap_fraction;     // mean X/n
  std::vector<double> mean_degree_fraction;  // mean D/n
  double mean_leaf_fraction = 0.0;
  double mean_node_fraction = 0.0;
  double mean_protected_fraction = 0.0;
  std::vector<double> gap_deviation;     // |mean X/n - v|
  std::vector<double> degree_deviation;  // |mean D/n - v*|
  double gap_sup_deviation = 0.0;
  double degree_sup_deviation = 0.0;

  friend bool operator==(const ConvergenceReport&,
                         const ConvergenceReport&) = default;
};

/// Builds `trials` trees from uniform permutations of 1..n; trial t uses
/// derive_seed(seed, t).
ConvergenceReport monte_carlo(unsigned m, std::uint64_t n,
                              std::uint64_t trials, std::uint64_t seed);
ConvergenceReport monte_carlo_serial(unsigned m, std::uint64_t n,
                                     std::uint64_t trials, std::uint64_t seed);

/// Sample moments of (D_n^(0) - n v*_0) / sqrt(n) over trials. Moments that
/// are undefined for the sample size (or a zero-variance sample) are empty.
struct CltStatistics {
  std::uint64_t samples = 0;
  double mean = 0.0;
  std::optional<double> variance;
  std::optional<double> skewness;         // bias-corrected G1
  std::optional<double> excess_kurtosis;  // bias-corrected G2
};

/// Moments of a sample; exposed for testing.
CltStatistics sample_moments(const std::vector<double>& sample);

CltStatistics clt_probe(unsigned m, std::uint64_t n, std::uint64_t trials,
                        std::uint64_t seed);
CltStatistics clt_probe_serial(unsigned m, std::uint64_t n,
                               std::uint64_t trials, std::uint64_t seed);

}  // namespace mst

#endif  // MST_ASYMPTOTICS_HPP
