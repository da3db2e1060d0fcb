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

#include "qmeter/operators.hpp"

#include <cmath>
#include <string>

namespace qmeter {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

Eigen::VectorXd eigenvalues_of(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
  require_square_finite(m_, "HermitianOperator");
  if (!is_hermitian(m_)) {
    throw ValidationError("HermitianOperator: matrix is not hermitian");
  }
}

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  require_square_finite(m_, "DensityOperator");
  if (!is_hermitian(m_)) {
    throw ValidationError("DensityOperator: matrix is not hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    throw ValidationError("DensityOperator: trace differs from one");
  }
  if (eigenvalues_of(m_).minCoeff() < kEigenvalueFloor) {
    throw ValidationError("DensityOperator: negative eigenvalue");
  }
}

Effect::Effect(Matrix m) : m_(std::move(m)) {
  require_square_finite(m_, "Effect");
  if (!is_hermitian(m_)) {
    throw ValidationError("Effect: matrix is not hermitian");
  }
  const Eigen::VectorXd ev = eigenvalues_of(m_);
  if (ev.minCoeff() < kEigenvalueFloor || ev.maxCoeff() > 1.0 - kEigenvalueFloor) {
    throw ValidationError("Effect: eigenvalues outside [0, 1]");
  }
}

SpectralDecomposition spectral(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral: eigendecomposition failed");
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const Complex amp = out.vectors(r, c);
      const double mag = std::abs(amp);
      if (mag > 1e-12) {
        out.vectors.col(c) *= std::conj(amp) / mag;
        break;
      }
    }
  }
  return out;
}

void require_distinct(const Eigen::VectorXd& sorted_values) {
  for (Eigen::Index i = 1; i < sorted_values.size(); ++i) {
    if (sorted_values[i] - sorted_values[i - 1] <= kDegeneracyGap) {
      throw DegenerateSpectrumError();
    }
  }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, Eigen::Index da, Eigen::Index db,
                     Keep keep) {
  if (da <= 0 || db <= 0 || m.rows() != da * db || m.cols() != da * db) {
    throw ValidationError("partial_trace: dimensions do not factor the matrix");
  }
  if (keep == Keep::First) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
      for (Eigen::Index j = 0; j < da; ++j) {
        for (Eigen::Index k = 0; k < db; ++k) {
          out(i, j) += m(i * db + k, j * db + k);
        }
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index k = 0; k < db; ++k) {
    for (Eigen::Index l = 0; l < db; ++l) {
      for (Eigen::Index i = 0; i < da; ++i) {
        out(k, l) += m(i * db + k, i * db + l);
      }
    }
  }
  return out;
}

Matrix herm_exp(const HermitianOperator& h, double angle) {
  const SpectralDecomposition s = spectral(h);
  return map_spectrum(s, [angle](double x) {
    return std::exp(Complex(0.0, angle * x));
  });
}

Matrix map_spectrum(const SpectralDecomposition& s,
                    const std::function<Complex(double)>& f) {
  Vector diag(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) diag[i] = f(s.values[i]);
  return s.vectors * diag.asDiagonal() * s.vectors.adjoint();
}

}  // namespace qmeter
