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
#include <map>

#include "qmeter/oracle.hpp"
#include "qmeter/wigner.hpp"

using namespace qmeter;

namespace {

// Independent reference: same double sum, but built from scratch with a
// different bookkeeping scheme and deliberately randomized eigenvector
// phases, which must not matter.
Eigen::MatrixXd reference_table(const HermitianOperator& first,
                                const HermitianOperator& second,
                                const DensityOperator& rho, Rng& rng,
                                const WignerTable& layout) {
  Eigen::SelfAdjointEigenSolver<Matrix> so(first.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> sp(second.matrix());
  Matrix vo = so.eigenvectors();
  Matrix vp = sp.eigenvectors();
  for (Eigen::Index c = 0; c < vo.cols(); ++c) {
    const double phase = rng.uniform(0.0, 6.283185307179586);
    vo.col(c) *= Complex(std::cos(phase), std::sin(phase));
  }
  for (Eigen::Index c = 0; c < vp.cols(); ++c) {
    const double phase = rng.uniform(0.0, 6.283185307179586);
    vp.col(c) *= Complex(std::cos(phase), std::sin(phase));
  }
  const Eigen::Index d = rho.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(
      d, static_cast<Eigen::Index>(layout.midpoints.size()));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        const double mid = 0.5 * (sp.eigenvalues()[j] + sp.eigenvalues()[k]);
        Eigen::Index col = -1;
        for (std::size_t c = 0; c < layout.midpoints.size(); ++c) {
          if (std::abs(layout.midpoints[c] - mid) < 5e-9) {
            col = static_cast<Eigen::Index>(c);
            break;
          }
        }
        REQUIRE(col >= 0);
        const Complex term = (vo.col(i).adjoint() * vp.col(j))(0) *
                             (vp.col(j).adjoint() * rho.matrix() * vp.col(k))(0) *
                             (vp.col(k).adjoint() * vo.col(i))(0);
        out(i, col) += term.real();
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("two-level table reduces to the conjugate-pair formula") {
  ScenarioSampler sampler(61);
  const HermitianOperator o = sampler.hermitian(2);
  const HermitianOperator p = sampler.hermitian(2);
  const DensityOperator rho = sampler.density(2);
  const WignerTable table = build_wigner(o, p, rho);
  REQUIRE(table.midpoints.size() == 3);

  const SpectralDecomposition so = spectral(o);
  const SpectralDecomposition sp = spectral(p);
  const Matrix overlap = so.vectors.adjoint() * sp.vectors;
  const Matrix cross = sp.vectors.adjoint() * rho.matrix() * sp.vectors;
  for (int i = 0; i < 2; ++i) {
    const double direct =
        2.0 * (overlap(i, 0) * cross(0, 1) * std::conj(overlap(i, 1))).real();
    CHECK(std::abs(table.weight(i, 1) - direct) < 1e-14);
    CHECK(std::abs(table.weight(i, 0) -
                   (overlap(i, 0) * cross(0, 0) * std::conj(overlap(i, 0)))
                       .real()) < 1e-14);
  }
}

TEST_CASE("tables are real with correct marginals, any dimension") {
  ScenarioSampler sampler(62);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = sampler.rng().uniform_int(2, 6);
    const HermitianOperator o = sampler.hermitian(d);
    const HermitianOperator p = sampler.hermitian(d);
    const DensityOperator rho = sampler.density(d);
    const WignerTable table = build_wigner(o, p, rho);

    CHECK(table.imag_residual < 1e-12);

    // Row sums reproduce the first observable's ordinary distribution.
    const SpectralDecomposition so = spectral(o);
    for (int i = 0; i < d; ++i) {
      const double row = table.weight.row(i).sum();
      const double born =
          (so.vectors.col(i).adjoint() * rho.matrix() * so.vectors.col(i))(0)
              .real();
      CHECK(std::abs(row - born) < 1e-12);
    }

    // Columns at single-eigenvalue midpoints reproduce the second
    // observable's distribution; interference columns sum to zero.
    const SpectralDecomposition sp = spectral(p);
    const Matrix cross = sp.vectors.adjoint() * rho.matrix() * sp.vectors;
    for (std::size_t c = 0; c < table.midpoints.size(); ++c) {
      const double col = table.weight.col(static_cast<Eigen::Index>(c)).sum();
      double expected = 0.0;
      for (int j = 0; j < d; ++j) {
        if (std::abs(sp.values[j] - table.midpoints[c]) < 5e-9) {
          expected = cross(j, j).real();
          break;
        }
      }
      CHECK(std::abs(col - expected) < 1e-12);
    }
  }
}

TEST_CASE("table entries match a phase-randomized reference") {
  ScenarioSampler sampler(63);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = sampler.rng().uniform_int(2, 6);
    const HermitianOperator o = sampler.hermitian(d);
    const HermitianOperator p = sampler.hermitian(d);
    const DensityOperator rho = sampler.density(d);
    const WignerTable table = build_wigner(o, p, rho);
    const Eigen::MatrixXd ref =
        reference_table(o, p, rho, sampler.rng(), table);
    CHECK((table.weight - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("identical observables collapse the table to the diagonal") {
  ScenarioSampler sampler(64);
  const int d = 5;
  const HermitianOperator p = sampler.hermitian(d);
  const DensityOperator rho = sampler.density(d);
  const WignerTable table = build_wigner(p, p, rho);

  const SpectralDecomposition sp = spectral(p);
  const Matrix cross = sp.vectors.adjoint() * rho.matrix() * sp.vectors;
  for (int i = 0; i < d; ++i) {
    for (std::size_t c = 0; c < table.midpoints.size(); ++c) {
      const bool on_diagonal =
          std::abs(table.midpoints[c] - sp.values[i]) < 5e-9;
      const double expected = on_diagonal ? cross(i, i).real() : 0.0;
      CHECK(std::abs(table.weight(i, static_cast<Eigen::Index>(c)) -
                     expected) < 1e-12);
    }
  }
}

TEST_CASE("generalized averages recover ordinary expectation values") {
  ScenarioSampler sampler(65);
  const int d = 4;
  const HermitianOperator o = sampler.hermitian(d);
  const HermitianOperator p = sampler.hermitian(d);
  const DensityOperator rho = sampler.density(d);
  const WignerTable table = build_wigner(o, p, rho);

  const double avg_o =
      generalized_average(table, [](double ov, double) { return ov; });
  const double avg_p =
      generalized_average(table, [](double, double m) { return m; });
  CHECK(std::abs(avg_o - (o.matrix() * rho.matrix()).trace().real()) < 1e-12);
  CHECK(std::abs(avg_p - (p.matrix() * rho.matrix()).trace().real()) < 1e-12);

  // Mixed average against the operator-ordered reference:
  // sum g(O) e^{2 i c M} weights = Tr[e^{i c P} g(O) e^{i c P} rho].
  const double c = 0.6;
  const Complex mixed = generalized_average(table, [&](double ov, double m) {
                          return ov * std::cos(2.0 * c * m);
                        }) +
                        Complex(0, 1) *
                            generalized_average(table, [&](double ov, double m) {
                              return ov * std::sin(2.0 * c * m);
                            });
  const Matrix rot = herm_exp(p, c);
  const Complex reference =
      (rot * o.matrix() * rot * rho.matrix()).trace();
  CHECK(std::abs(mixed - reference) < 1e-12);
}

TEST_CASE("degenerate spectra are refused") {
  ScenarioSampler sampler(66);
  Matrix degenerate = Matrix::Zero(3, 3);
  degenerate(0, 0) = 1.0;
  degenerate(1, 1) = 1.0;
  degenerate(2, 2) = 2.0;
  const DensityOperator rho = sampler.density(3);
  CHECK_THROWS_AS(
      build_wigner(HermitianOperator(degenerate), sampler.hermitian(3), rho),
      DegenerateSpectrumError);
  CHECK_THROWS_AS(
      build_wigner(sampler.hermitian(3), HermitianOperator(degenerate), rho),
      DegenerateSpectrumError);
}
