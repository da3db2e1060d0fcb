// Copyright 2026 The qmeter developers
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

#include <catch2/catch_amalgamated.hpp>

#include "qmeter/operators.hpp"
#include "qmeter/random.hpp"

using namespace qmeter;

namespace {

Matrix random_matrix(Rng& rng, int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  return m;
}

Matrix random_hermitian(Rng& rng, int d) {
  const Matrix g = random_matrix(rng, d);
  return 0.5 * (g + g.adjoint());
}

Matrix random_density(Rng& rng, int d) {
  const Matrix g = random_matrix(rng, d);
  Matrix m = g * g.adjoint();
  return m / m.trace();
}

// Plain scaled-and-squared-free Taylor series; independent of herm_exp's
// spectral route.
Matrix taylor_exp(const Matrix& m) {
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= 40; ++k) {
    term = term * m / double(k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("tensor matches the index formula") {
  Rng rng(11);
  const Matrix a = random_matrix(rng, 3);
  const Matrix b = random_matrix(rng, 4);
  const Matrix t = tensor(a, b);
  REQUIRE(t.rows() == 12);
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          err = std::max(err,
                         std::abs(t(i * 4 + k, j * 4 + l) - a(i, j) * b(k, l)));
  CHECK(err == 0.0);
}

TEST_CASE("partial_trace sums the right double indices") {
  Rng rng(12);
  const Matrix m = random_matrix(rng, 12);  // viewed as 3 x 4
  const Matrix first = partial_trace(m, 3, 4, Keep::First);
  const Matrix second = partial_trace(m, 3, 4, Keep::Second);

  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < 4; ++k) s += m(i * 4 + k, j * 4 + k);
      err = std::max(err, std::abs(first(i, j) - s));
    }
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      Complex s = 0.0;
      for (int i = 0; i < 3; ++i) s += m(i * 4 + k, i * 4 + l);
      err = std::max(err, std::abs(second(k, l) - s));
    }
  CHECK(err == 0.0);
  CHECK(std::abs(first.trace() - m.trace()) < 1e-12);
  CHECK(std::abs(second.trace() - m.trace()) < 1e-12);
}

TEST_CASE("partial_trace undoes tensor") {
  Rng rng(13);
  const Matrix a = random_matrix(rng, 3);
  const Matrix b = random_matrix(rng, 5);
  const Matrix t = tensor(a, b);
  CHECK((partial_trace(t, 3, 5, Keep::First) - b.trace() * a)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((partial_trace(t, 3, 5, Keep::Second) - a.trace() * b)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK_THROWS_AS(partial_trace(t, 4, 5, Keep::First), ValidationError);
}

TEST_CASE("herm_exp agrees with a truncated Taylor series") {
  Rng rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + trial;
    const HermitianOperator h(random_hermitian(rng, d));
    const double angle = rng.uniform(-1.5, 1.5);
    const Matrix u = herm_exp(h, angle);
    const Matrix ref = taylor_exp(Complex(0.0, angle) * h.matrix());
    CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u * u.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  const HermitianOperator h(random_hermitian(rng, 4));
  CHECK((herm_exp(h, 0.0) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("spectral reconstructs, sorts and fixes phases") {
  Rng rng(15);
  const HermitianOperator h(random_hermitian(rng, 6));
  const SpectralDecomposition s = spectral(h);

  const Matrix rebuilt =
      s.vectors * s.values.cast<Complex>().asDiagonal() * s.vectors.adjoint();
  CHECK((rebuilt - h.matrix()).cwiseAbs().maxCoeff() < 1e-12);

  for (Eigen::Index i = 1; i < s.values.size(); ++i) {
    CHECK(s.values[i] >= s.values[i - 1]);
  }
  for (Eigen::Index c = 0; c < s.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < s.vectors.rows(); ++r) {
      const Complex amp = s.vectors(r, c);
      if (std::abs(amp) > 1e-12) {
        CHECK(amp.real() > 0.0);
        CHECK(std::abs(amp.imag()) < 1e-12);
        break;
      }
    }
  }
}

TEST_CASE("map_spectrum applies scalar functions to the spectrum") {
  Rng rng(16);
  const HermitianOperator h(random_hermitian(rng, 5));
  const SpectralDecomposition s = spectral(h);
  const Matrix sq = map_spectrum(s, [](double x) { return Complex(x * x, 0); });
  CHECK((sq - h.matrix() * h.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("require_distinct flags close eigenvalues") {
  Eigen::VectorXd ok(3);
  ok << 0.0, 0.5, 1.0;
  CHECK_NOTHROW(require_distinct(ok));
  Eigen::VectorXd bad(3);
  bad << 0.0, 0.5, 0.5 + 1e-11;
  CHECK_THROWS_AS(require_distinct(bad), DegenerateSpectrumError);
}

TEST_CASE("validating constructors reject malformed input") {
  Rng rng(17);
  Matrix h = random_hermitian(rng, 3);
  h(0, 1) += Complex(0.0, 1e-6);
  CHECK_THROWS_AS(HermitianOperator(h), ValidationError);

  Matrix rho = random_density(rng, 3);
  CHECK_NOTHROW(DensityOperator(rho));
  CHECK_THROWS_AS(DensityOperator(0.9 * rho), ValidationError);

  Matrix neg = rho - 0.5 * Matrix::Identity(3, 3);
  neg /= neg.trace();
  CHECK_THROWS_AS(DensityOperator(neg), ValidationError);

  CHECK_NOTHROW(Effect(0.5 * Matrix::Identity(3, 3)));
  CHECK_THROWS_AS(Effect(1.5 * Matrix::Identity(3, 3)), ValidationError);
  CHECK_THROWS_AS(Effect(-0.1 * Matrix::Identity(3, 3)), ValidationError);

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(HermitianOperator(rect), ValidationError);
}
