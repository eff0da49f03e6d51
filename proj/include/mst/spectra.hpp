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

#ifndef MST_SPECTRA_HPP
#define MST_SPECTRA_HPP

#include <complex>
#include <vector>

namespace mst {

/// H_m = 1 + 1/2 + ... + 1/m.
double harmonic(unsigned m);

enum class Regime { kGaussian, kNonGaussian };

const char* to_string(Regime regime) noexcept;

struct SpectralReport {
  unsigned m = 0;
  /// Eigenvalues of A^T, descending by real part, ties by descending
  /// imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  double lambda1 = 0.0;
  double lambda2_re = 0.0;
  Regime regime = Regime::kGaussian;
};

/// Principal (Perron) left eigenvector of the replacement matrix,
/// normalized so that all 2m-2 components sum to 1:
///   v_i     = i / (m(m+1)(H_m - 1))        i = 1..m
///   v_{m+j} = 1 / ((j+2)(H_m - 1))         j = 1..m-2
std::vector<double> principal_eigenvector(unsigned m);

inline constexpr unsigned kMaxSpectralM = 64;

/// Supported for 2 <= m <= kMaxSpectralM.
SpectralReport eigen_spectrum(unsigned m);

/// Gaussian iff Re(lambda_2) < 1/2.
Regime regime(unsigned m);

}  // namespace mst

#endif  // MST_SPECTRA_HPP
