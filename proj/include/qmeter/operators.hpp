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

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "qmeter/errors.hpp"

namespace qmeter {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances shared across the library.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kDegeneracyGap = 1e-10;

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// Square matrix validated hermitian on construction; the raw entries are kept
// as given (no symmetrization).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// Hermitian, unit trace, spectrum bounded below by kEigenvalueFloor.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// Hermitian with spectrum inside [0, 1] up to kEigenvalueFloor slack.
class Effect {
 public:
  explicit Effect(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

// Eigenvalues ascending; each eigenvector's phase is fixed so that its first
// coefficient above 1e-12 in magnitude is real and positive.
struct SpectralDecomposition {
  Eigen::VectorXd values;
  Matrix vectors;  // columns, ordered like `values`
};

SpectralDecomposition spectral(const HermitianOperator& h);

// Throws DegenerateSpectrumError when two sorted eigenvalues are closer than
// kDegeneracyGap.
void require_distinct(const Eigen::VectorXd& sorted_values);

// Kronecker product, first factor owning the slow index:
// out(i*rb+k, j*cb+l) = a(i,j) * b(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Keep { First, Second };

// Trace over one factor of a (da*db) x (da*db) matrix.
Matrix partial_trace(const Matrix& m, Eigen::Index da, Eigen::Index db,
                     Keep keep);

// exp(i * angle * H), unitary for hermitian H.
Matrix herm_exp(const HermitianOperator& h, double angle);

// vectors * diag(f(values)) * vectors^dagger.
Matrix map_spectrum(const SpectralDecomposition& s,
                    const std::function<Complex(double)>& f);

}  // namespace qmeter
