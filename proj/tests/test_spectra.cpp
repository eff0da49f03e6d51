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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "mst/eigensolver.hpp"
#include "mst/error.hpp"
#include "mst/spectra.hpp"
#include "mst/urn.hpp"

using namespace mst;

namespace {

Eigen::MatrixXd transposed(unsigned m) {
  const ReplacementMatrix a(m);
  Eigen::MatrixXd at(a.colors(), a.colors());
  for (unsigned r = 1; r <= a.colors(); ++r) {
    for (unsigned c = 1; c <= a.colors(); ++c) {
      at(c - 1, r - 1) = static_cast<double>(a.at(r, c));
    }
  }
  return at;
}

// Eigen's solver is the independent route for the full spectrum.
std::vector<std::complex<double>> oracle_spectrum(unsigned m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(transposed(m), false);
  REQUIRE(solver.info() == Eigen::Success);
  std::vector<std::complex<double>> ev(solver.eigenvalues().begin(),
                                       solver.eigenvalues().end());
  return ev;
}

// Greedy nearest matching of two multisets; returns the worst distance.
double spectrum_distance(std::vector<std::complex<double>> a,
                         std::vector<std::complex<double>> b) {
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](auto p, auto q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(2) == 1.5);
  CHECK(harmonic(10) == doctest::Approx(7381.0 / 2520.0).epsilon(1e-15));
  CHECK(std::abs(harmonic(10) - 2.9289682539682538) < 1e-15);
  CHECK_THROWS_AS(harmonic(0), Error);
}

TEST_CASE("principal eigenvector closed form") {
  const std::vector<double> v4 = principal_eigenvector(4);
  const std::vector<double> e4{3, 6, 9, 12, 20, 15};
  for (std::size_t i = 0; i < 6; ++i) CHECK(v4[i] == doctest::Approx(e4[i] / 65).epsilon(1e-14));
  const std::vector<double> v3 = principal_eigenvector(3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(v3[i] == doctest::Approx((i + 1) / 10.0).epsilon(1e-14));
  const std::vector<double> v2 = principal_eigenvector(2);
  CHECK(v2[0] == doctest::Approx(1.0 / 3));
  CHECK(v2[1] == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(principal_eigenvector(1), Error);
}

TEST_CASE("closed form is a positive fixed point of A^T") {
  for (unsigned m = 2; m <= 40; ++m) {
    CAPTURE(m);
    const std::vector<double> v = principal_eigenvector(m);
    const Eigen::MatrixXd at = transposed(m);
    const Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
    CHECK((at * ev - ev).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(ev.sum() - 1.0) < 1e-12);
    CHECK(ev.minCoeff() > 0.0);
  }
}

// The integer eigenvalues near -m come in nearly defective pairs and no
// double-precision solver resolves them once m grows (both this one and the
// oracle drift by O(1) at m = 26). The whole spectrum is compared while it is
// well conditioned; the leading part is compared for every m.
TEST_CASE("QR eigenvalues match an independent solver") {
  for (unsigned m = 2; m <= kMaxSpectralM; ++m) {
    CAPTURE(m);
    const SpectralReport r = eigen_spectrum(m);
    REQUIRE(r.eigenvalues.size() == 2 * m - 2);
    std::vector<std::complex<double>> oracle = oracle_spectrum(m);
    if (m <= 17) CHECK(spectrum_distance(r.eigenvalues, oracle) < 1e-6);
    std::sort(oracle.begin(), oracle.end(), [](auto p, auto q) {
      return p.real() != q.real() ? p.real() > q.real() : p.imag() > q.imag();
    });
    const std::size_t lead = std::min<std::size_t>(8, oracle.size());
    for (std::size_t i = 0; i < lead; ++i) {
      CAPTURE(i);
      CHECK(std::abs(r.eigenvalues[i] - oracle[i]) < 1e-9);
    }
    // trace check
    std::complex<double> sum = 0.0;
    for (const auto& z : r.eigenvalues) sum += z;
    CHECK(std::abs(sum - transposed(m).trace()) < 1e-8);
  }
}

TEST_CASE("spectrum ordering and basic facts") {
  for (unsigned m = 2; m <= 40; ++m) {
    CAPTURE(m);
    const SpectralReport r = eigen_spectrum(m);
    CHECK(std::abs(r.lambda1 - 1.0) < 1e-9);
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
      CHECK(r.eigenvalues[i - 1].real() >= r.eigenvalues[i].real());
    }
    // closed under conjugation
    for (const auto& z : r.eigenvalues) {
      double best = 1e9;
      for (const auto& w : r.eigenvalues) best = std::min(best, std::abs(w - std::conj(z)));
      CHECK(best < 1e-8);
    }
    CHECK(r.regime == (r.lambda2_re < 0.5 ? Regime::kGaussian : Regime::kNonGaussian));
  }
}

TEST_CASE("binary spectrum") {
  const SpectralReport r = eigen_spectrum(2);
  CHECK(r.eigenvalues[0].real() == doctest::Approx(1.0));
  CHECK(r.eigenvalues[1].real() == doctest::Approx(-2.0));
  CHECK(r.regime == Regime::kGaussian);
}

TEST_CASE("phase boundary between 26 and 27") {
  CHECK(std::abs(eigen_spectrum(14).lambda2_re - 0.040) <= 0.001);
  CHECK(std::abs(eigen_spectrum(26).lambda2_re - 0.499) <= 0.001);
  CHECK(std::abs(eigen_spectrum(27).lambda2_re - 0.516) <= 0.001);
  CHECK(regime(26) == Regime::kGaussian);
  CHECK(regime(27) == Regime::kNonGaussian);
  for (unsigned m = 2; m <= 26; ++m) CHECK(regime(m) == Regime::kGaussian);
}

TEST_CASE("unsupported sizes") {
  CHECK_THROWS_AS(eigen_spectrum(1), Error);
  CHECK_THROWS_AS(eigen_spectrum(kMaxSpectralM + 1), Error);
}

TEST_CASE("eigensolver on small known matrices") {
  // rotation by 90 degrees: +-i
  DenseMatrix rot{2, {0, -1, 1, 0}};
  auto ev = eigenvalues(rot);
  CHECK(spectrum_distance(ev, {{0, 1}, {0, -1}}) < 1e-12);
  // upper triangular
  DenseMatrix tri{3, {1, 5, 7, 0, 2, 11, 0, 0, 3}};
  ev = eigenvalues(tri);
  CHECK(spectrum_distance(ev, {1, 2, 3}) < 1e-12);
  DenseMatrix companion{3, {0, 0, 6, 1, 0, -11, 0, 1, 6}};  // roots 1,2,3
  ev = eigenvalues(companion);
  CHECK(spectrum_distance(ev, {1, 2, 3}) < 1e-9);
}
