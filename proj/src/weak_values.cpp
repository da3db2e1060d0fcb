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

#include "qmeter/weak_values.hpp"

#include <cmath>

namespace qmeter {

namespace {

void require_same_dim(const DensityOperator& rho, const Effect& e,
                      const HermitianOperator& a) {
  if (rho.dim() != e.dim() || rho.dim() != a.dim()) {
    throw ValidationError("weak values: operator dimensions disagree");
  }
}

}  // namespace

WeakValueSet assemble_weak_values(double omega, Complex alpha, double beta,
                                  double scale) {
  if (beta < kEigenvalueFloor) {
    throw NumericalError("weak values: beta came out negative");
  }
  WeakValueSet wv;
  wv.omega = omega;
  wv.alpha = alpha;
  wv.beta = beta;
  wv.scale = scale;
  wv.defined = omega > 1e-14 * scale;
  if (wv.defined) {
    wv.a_w = alpha / omega;
    wv.b_w = beta / omega;
  }
  return wv;
}

Complex normal_weak_value(const DensityOperator& rho, const Effect& e,
                          const HermitianOperator& a, int m, int n) {
  require_same_dim(rho, e, a);
  if (m < 0 || m > 4 || n < 0 || n > 4) {
    throw ValidationError("normal_weak_value: orders must be in 0..4");
  }
  const Matrix& am = a.matrix();
  Matrix left = Matrix::Identity(a.dim(), a.dim());
  for (int i = 0; i < m; ++i) left = am * left;
  Matrix right = Matrix::Identity(a.dim(), a.dim());
  for (int i = 0; i < n; ++i) right = am * right;
  return (left * e.matrix() * right * rho.matrix()).trace();
}

WeakValueSet weak_values_from_operators(const DensityOperator& rho,
                                        const Effect& e,
                                        const HermitianOperator& a) {
  require_same_dim(rho, e, a);
  const Complex omega_c = normal_weak_value(rho, e, a, 0, 0);
  const Complex alpha = normal_weak_value(rho, e, a, 0, 1);
  const Complex beta_c = normal_weak_value(rho, e, a, 1, 1);
  if (std::abs(beta_c.imag()) > 1e-10 || std::abs(omega_c.imag()) > 1e-10) {
    throw NumericalError("weak values: real correlator has imaginary residue");
  }
  return assemble_weak_values(omega_c.real(), alpha, beta_c.real(),
                              e.matrix().trace().real());
}

WeakValueSet geometric_weak_values(const QubitState& prep,
                                   const Effect& postselect,
                                   const QubitAxis& axis) {
  const EffectBloch eb = effect_to_bloch(postselect);
  const Vec3& mi = prep.polarization();
  const Vec3& mf = eb.m;
  const Vec3& a = axis.direction();
  const double t = eb.trace_part;

  const double omega = 0.5 * t * (1.0 + mi.dot(mf));
  const Vec3 cross = mi.cross(mf);
  const Complex alpha =
      0.5 * t * Complex((mi + mf).dot(a), cross.dot(a));
  const double beta =
      0.5 * t * (1.0 - mi.dot(mf) + 2.0 * mf.dot(a) * a.dot(mi));
  return assemble_weak_values(omega, alpha, beta, t);
}

PurityVerdict purity_discriminator(const WeakValueSet& wv, double tol) {
  if (!wv.defined) {
    throw UndefinedWeakValueError();
  }
  const double gap = wv.b_w - std::norm(wv.a_w);
  return gap > tol ? PurityVerdict::MixedDetected
                   : PurityVerdict::ConsistentWithPure;
}

}  // namespace qmeter
