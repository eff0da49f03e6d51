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

#include "mst/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mst/eigensolver.hpp"
#include "mst/error.hpp"
#include "mst/urn.hpp"

namespace mst {

double harmonic(unsigned m) {
  if (m < 1) {
    throw Error(ErrorKind::kInvalidParameter, "harmonic number needs m >= 1");
  }
  // Kahan summation in extended precision, smallest terms first.
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (unsigned i = m; i >= 1; --i) {
    const long double term = 1.0L / static_cast<long double>(i) - carry;
    const long double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return static_cast<double>(sum);
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::kGaussian ? "Gaussian" : "NonGaussian";
}

std::vector<double> principal_eigenvector(unsigned m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter,
                "branching factor must be at least 2, got " + std::to_string(m));
  }
  // For m = 2 there are no leaf colors beyond m and the formula reduces to
  // (1/3, 2/3), the fixed point of the boundary matrix.
  const double hm1 = harmonic(m) - 1.0;
  const double md = m;
  std::vector<double> v(2 * m - 2);
  for (unsigned i = 1; i <= m; ++i) v[i - 1] = i / (md * (md + 1.0) * hm1);
  for (unsigned j = 1; j + 2 <= m; ++j) v[m + j - 1] = 1.0 / ((j + 2.0) * hm1);
  return v;
}

SpectralReport eigen_spectrum(unsigned m) {
  if (m < 2 || m > kMaxSpectralM) {
    throw Error(ErrorKind::kInvalidParameter,
                "spectrum supported for 2 <= m <= " +
                    std::to_string(kMaxSpectralM) + ", got " +
                    std::to_string(m));
  }
  const ReplacementMatrix a(m);
  DenseMatrix at{a.colors(), a.transposed_as_double()};
  SpectralReport report;
  report.m = m;
  report.eigenvalues = eigenvalues(std::move(at));
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() > y.real();
              return x.imag() > y.imag();
            });
  report.lambda1 = report.eigenvalues.front().real();
  if (std::fabs(report.lambda1 - 1.0) > 1e-9 ||
      std::fabs(report.eigenvalues.front().imag()) > 1e-9) {
    throw Error(ErrorKind::kNumericFailure,
                "Perron root is not 1 for m = " + std::to_string(m));
  }
  report.lambda2_re = report.eigenvalues[1].real();
  report.regime =
      report.lambda2_re < 0.5 ? Regime::kGaussian : Regime::kNonGaussian;
  return report;
}

Regime regime(unsigned m) { return eigen_spectrum(m).regime; }

}  // namespace mst
