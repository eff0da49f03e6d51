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

// Dense nonsymmetric eigenvalue solver: balancing, Householder reduction to
// upper Hessenberg form, then Francis double-shift QR on the Hessenberg
// matrix. Eigenvalues only.

#ifndef MST_EIGENSOLVER_HPP
#define MST_EIGENSOLVER_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace mst {

/// Row-major n x n matrix.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

void balance(DenseMatrix& m);
void reduce_to_hessenberg(DenseMatrix& m);

/// Eigenvalues of an upper Hessenberg matrix (destroyed). Throws
/// kNumericFailure if some eigenvalue fails to converge within
/// `max_iterations_per_eigenvalue` QR sweeps.
std::vector<std::complex<double>> hessenberg_eigenvalues(
    DenseMatrix& h, int max_iterations_per_eigenvalue = 60);

/// All n eigenvalues (with multiplicity), unordered.
std::vector<std::complex<double>> eigenvalues(DenseMatrix m);

}  // namespace mst

#endif  // MST_EIGENSOLVER_HPP
