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

#include "mst/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mst/error.hpp"
#include "mst/random.hpp"
#include "mst/spectra.hpp"
#include "mst/tree.hpp"

namespace mst {

LimitProfile limit_profile(unsigned m) {
  LimitProfile lp;
  lp.m = m;
  lp.v = principal_eigenvector(m);
  const double md = m;
  const double hm1 = harmonic(m) - 1.0;
  lp.leaf_fraction = (md - 1.0) / (2.0 * (md + 1.0) * hm1);
  lp.full_fraction = 1.0 / (md * (md + 1.0) * hm1);
  lp.node_fraction = 1.0 / (2.0 * hm1);
  lp.protected_fraction = lp.node_fraction - lp.leaf_fraction;
  lp.quoted_protected_fraction = 1.0 / (2.0 * (md + 1.0) * hm1);
  lp.v_star.assign(m + 1, lp.full_fraction);
  lp.v_star[0] = lp.leaf_fraction;
  return lp;
}

namespace {

struct TrialCounts {
  std::vector<std::int64_t> gaps;
  std::vector<std::int64_t> degrees;
};

TrialCounts run_trial(unsigned m, std::uint64_t n, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  const std::vector<Key> perm = random_permutation(n, rng);
  const MaryTree tree = build_from_permutation(m, perm);
  return {gap_profile(tree).x, degree_profile(tree).by_degree};
}

std::vector<TrialCounts> run_trials(unsigned m, std::uint64_t n,
                                    std::uint64_t trials, std::uint64_t seed,
                                    bool parallel) {
  std::vector<TrialCounts> out(trials);
  const auto count = static_cast<std::int64_t>(trials);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < count; ++t) {
      out[t] = run_trial(m, n, derive_seed(seed, static_cast<std::uint64_t>(t)));
    }
  } else {
    for (std::int64_t t = 0; t < count; ++t) {
      out[t] = run_trial(m, n, derive_seed(seed, static_cast<std::uint64_t>(t)));
    }
  }
  return out;
}

void check_mc_args(unsigned m, std::uint64_t n, std::uint64_t trials) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter, "m must be at least 2");
  }
  if (n < 1 || trials < 1) {
    throw Error(ErrorKind::kInvalidParameter, "need n >= 1 and trials >= 1");
  }
}

ConvergenceReport summarize(unsigned m, std::uint64_t n, std::uint64_t trials,
                            std::uint64_t seed,
                            const std::vector<TrialCounts>& counts) {
  const LimitProfile lp = limit_profile(m);
  std::vector<std::int64_t> gap_sum(2 * m - 2, 0);
  std::vector<std::int64_t> degree_sum(m + 1, 0);
  for (const TrialCounts& tc : counts) {
    for (std::size_t i = 0; i < gap_sum.size(); ++i) gap_sum[i] += tc.gaps[i];
    for (std::size_t i = 0; i < degree_sum.size(); ++i) {
      degree_sum[i] += tc.degrees[i];
    }
  }
  // Integer sums, one division: the result cannot depend on trial order.
  const double scale = static_cast<double>(n) * static_cast<double>(trials);
  ConvergenceReport r;
  r.m = m;
  r.n = n;
  r.trials = trials;
  r.seed = seed;
  std::int64_t nodes = 0;
  for (std::size_t i = 0; i < gap_sum.size(); ++i) {
    const double mean = static_cast<double>(gap_sum[i]) / scale;
    r.mean_gap_fraction.push_back(mean);
    r.gap_deviation.push_back(std::fabs(mean - lp.v[i]));
  }
  for (std::size_t i = 0; i < degree_sum.size(); ++i) {
    nodes += degree_sum[i];
    const double mean = static_cast<double>(degree_sum[i]) / scale;
    r.mean_degree_fraction.push_back(mean);
    r.degree_deviation.push_back(std::fabs(mean - lp.v_star[i]));
  }
  r.mean_leaf_fraction = static_cast<double>(degree_sum[0]) / scale;
  r.mean_node_fraction = static_cast<double>(nodes) / scale;
  r.mean_protected_fraction =
      static_cast<double>(nodes - degree_sum[0]) / scale;
  r.gap_sup_deviation =
      *std::max_element(r.gap_deviation.begin(), r.gap_deviation.end());
  r.degree_sup_deviation =
      *std::max_element(r.degree_deviation.begin(), r.degree_deviation.end());
  return r;
}

ConvergenceReport monte_carlo_impl(unsigned m, std::uint64_t n,
                                   std::uint64_t trials, std::uint64_t seed,
                                   bool parallel) {
  check_mc_args(m, n, trials);
  return summarize(m, n, trials, seed, run_trials(m, n, trials, seed, parallel));
}

CltStatistics clt_probe_impl(unsigned m, std::uint64_t n, std::uint64_t trials,
                             std::uint64_t seed, bool parallel) {
  if (m < 3 || m > 26) {
    throw Error(ErrorKind::kInvalidParameter,
                "CLT probe needs 3 <= m <= 26, got " + std::to_string(m));
  }
  check_mc_args(m, n, trials);
  const std::vector<TrialCounts> counts =
      run_trials(m, n, trials, seed, parallel);
  const double center = static_cast<double>(n) * limit_profile(m).v_star[0];
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> z;
  z.reserve(counts.size());
  for (const TrialCounts& tc : counts) {
    z.push_back((static_cast<double>(tc.degrees[0]) - center) / root_n);
  }
  return sample_moments(z);
}

}  // namespace

ConvergenceReport monte_carlo(unsigned m, std::uint64_t n,
                              std::uint64_t trials, std::uint64_t seed) {
  return monte_carlo_impl(m, n, trials, seed, true);
}

ConvergenceReport monte_carlo_serial(unsigned m, std::uint64_t n,
                                     std::uint64_t trials, std::uint64_t seed) {
  return monte_carlo_impl(m, n, trials, seed, false);
}

CltStatistics sample_moments(const std::vector<double>& sample) {
  CltStatistics s;
  s.samples = sample.size();
  if (sample.empty()) return s;
  const double count = static_cast<double>(sample.size());
  double sum = 0.0;
  for (double x : sample) sum += x;
  s.mean = sum / count;
  if (sample.size() < 2) return s;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : sample) {
    const double d = x - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  s.variance = m2 / (count - 1.0);
  m2 /= count;
  m3 /= count;
  m4 /= count;
  if (m2 == 0.0) return s;
  if (sample.size() >= 3) {
    const double g1 = m3 / std::pow(m2, 1.5);
    s.skewness = std::sqrt(count * (count - 1.0)) / (count - 2.0) * g1;
  }
  if (sample.size() >= 4) {
    const double g2 = m4 / (m2 * m2) - 3.0;
    s.excess_kurtosis = (count - 1.0) / ((count - 2.0) * (count - 3.0)) *
                        ((count + 1.0) * g2 + 6.0);
  }
  return s;
}

CltStatistics clt_probe(unsigned m, std::uint64_t n, std::uint64_t trials,
                        std::uint64_t seed) {
  return clt_probe_impl(m, n, trials, seed, true);
}

CltStatistics clt_probe_serial(unsigned m, std::uint64_t n,
                               std::uint64_t trials, std::uint64_t seed) {
  return clt_probe_impl(m, n, trials, seed, false);
}

}  // namespace mst
