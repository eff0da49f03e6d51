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

#include "mst/eigensolver.hpp"

#include <cmath>
#include <limits>

#include "mst/error.hpp"

namespace mst {

namespace {

double copysign_nonzero(double magnitude, double sign_of) {
  return sign_of >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

}  // namespace

// Parlett-Reinsch: rescale rows/columns by powers of two until row and
// column norms are comparable. Similarity transform, so eigenvalues are
// preserved exactly up to rounding.
void balance(DenseMatrix& m) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const std::size_t n = m.n;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::fabs(m(j, i));
        r += std::fabs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) m(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) m(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(DenseMatrix& m) {
  const std::size_t n = m.n;
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += m(i, k) * m(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = -copysign_nonzero(norm, m(k + 1, k));
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = m(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm += v[i] * v[i];
    }
    if (vnorm == 0.0) continue;
    // P = I - 2 v v^T / (v^T v); apply P from the left, then the right.
    const double scale = 2.0 / vnorm;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * m(i, j);
      dot *= scale;
      for (std::size_t i = k + 1; i < n; ++i) m(i, j) -= dot * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += m(i, j) * v[j];
      dot *= scale;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= dot * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) m(i, k) = 0.0;
  }
}

// Francis double-shift QR with exceptional shifts at iterations 10 and 20,
// deflating when a subdiagonal entry is negligible at machine precision.
// Indices below are 1-based to keep the bulge-chasing bounds readable.
std::vector<std::complex<double>> hessenberg_eigenvalues(
    DenseMatrix& h, int max_iterations_per_eigenvalue) {
  const auto n = static_cast<long>(h.n);
  auto a = [&h](long i, long j) -> double& {
    return h(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  };
  std::vector<double> wr(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> wi(static_cast<std::size_t>(n) + 1, 0.0);

  double anorm = 0.0;
  for (long i = 1; i <= n; ++i) {
    for (long j = std::max(i - 1, 1L); j <= n; ++j) anorm += std::fabs(a(i, j));
  }

  long nn = n;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0,
         z = 0.0;
  while (nn >= 1) {
    int its = 0;
    long l = 1;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + copysign_nonzero(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = z;
            wi[nn] = -z;
          }
          nn -= 2;
        } else {
          if (its == max_iterations_per_eigenvalue) {
            throw Error(ErrorKind::kNumericFailure,
                        "QR iteration did not converge");
          }
          if (its == 10 || its == 20) {
            t += x;
            for (long i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          long mm = nn - 2;
          for (; mm >= l; --mm) {
            z = a(mm, mm);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(mm + 1, mm) + a(mm, mm + 1);
            q = a(mm + 1, mm + 1) - z - r - s;
            r = a(mm + 2, mm + 1);
            s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (mm == l) break;
            const double u = std::fabs(a(mm, mm - 1)) * (std::fabs(q) + std::fabs(r));
            const double v = std::fabs(p) * (std::fabs(a(mm - 1, mm - 1)) +
                                             std::fabs(z) +
                                             std::fabs(a(mm + 1, mm + 1)));
            if (u + v == v) break;
          }
          for (long i = mm + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != mm + 2) a(i, i - 3) = 0.0;
          }
          for (long k = mm; k <= nn - 1; ++k) {
            if (k != mm) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = copysign_nonzero(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == mm) {
              if (l != mm) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (long j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const long last = std::min(nn, k + 3);
            for (long i = l; i <= last; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (nn >= 1 && l < nn - 1);
  }

  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) out.emplace_back(wr[i], wi[i]);
  return out;
}

std::vector<std::complex<double>> eigenvalues(DenseMatrix m) {
  if (m.a.size() != m.n * m.n) {
    throw Error(ErrorKind::kInvalidParameter, "matrix is not square");
  }
  if (m.n == 0) return {};
  balance(m);
  reduce_to_hessenberg(m);
  return hessenberg_eigenvalues(m);
}

}  // namespace mst
