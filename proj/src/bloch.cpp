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

#include "qmeter/bloch.hpp"

#include <cmath>

namespace qmeter {

Matrix pauli(int axis) {
  Matrix m(2, 2);
  switch (axis) {
    case 0:
      m << 0, 1, 1, 0;
      break;
    case 1:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case 2:
      m << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError("pauli: axis must be 0, 1 or 2");
  }
  return m;
}

Matrix pauli_dot(const Vec3& v) {
  Matrix m(2, 2);
  m(0, 0) = Complex(v[2], 0);
  m(0, 1) = Complex(v[0], -v[1]);
  m(1, 0) = Complex(v[0], v[1]);
  m(1, 1) = Complex(-v[2], 0);
  return m;
}

QubitState::QubitState(Vec3 m) : m_(std::move(m)) {
  if (!m_.allFinite()) {
    throw ValidationError("QubitState: non-finite polarization");
  }
  if (m_.norm() > 1.0 + 1e-9) {
    throw ValidationError("QubitState: polarization outside the Bloch ball");
  }
}

QubitAxis::QubitAxis(Vec3 u) : u_(std::move(u)) {
  if (!u_.allFinite()) {
    throw ValidationError("QubitAxis: non-finite direction");
  }
  const double n = u_.norm();
  if (std::abs(n - 1.0) > 1e-9) {
    throw ValidationError("QubitAxis: direction must be a unit vector");
  }
  u_ /= n;
}

DensityOperator bloch_to_density(const QubitState& s) {
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + pauli_dot(s.polarization()));
  return DensityOperator(std::move(m));
}

Vec3 density_to_bloch(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw ValidationError("density_to_bloch: operator is not a qubit state");
  }
  const Matrix& r = rho.matrix();
  Vec3 m;
  m[0] = 2.0 * r(1, 0).real();
  m[1] = 2.0 * r(1, 0).imag();
  m[2] = (r(0, 0) - r(1, 1)).real();
  return m;
}

Effect readout_projector(const QubitAxis& q, int tau) {
  if (tau != 1 && tau != -1) {
    throw ValidationError("readout_projector: outcome must be +1 or -1");
  }
  Matrix m = 0.5 * (Matrix::Identity(2, 2) + double(tau) * pauli_dot(q.direction()));
  return Effect(std::move(m));
}

Effect effect_from_bloch(const Vec3& m, double trace_part) {
  Matrix e = 0.5 * trace_part * (Matrix::Identity(2, 2) + pauli_dot(m));
  return Effect(std::move(e));
}

EffectBloch effect_to_bloch(const Effect& e) {
  if (e.dim() != 2) {
    throw ValidationError("effect_to_bloch: effect is not on a qubit");
  }
  const Matrix& m = e.matrix();
  const double t = m.trace().real();
  if (t <= 0.0) {
    throw ValidationError("effect_to_bloch: effect has vanishing trace");
  }
  Vec3 v;
  v[0] = 2.0 * m(1, 0).real() / t;
  v[1] = 2.0 * m(1, 0).imag() / t;
  v[2] = (m(0, 0) - m(1, 1)).real() / t;
  return {v, t};
}

Vector axis_ket(const QubitAxis& q, int tau) {
  if (tau != 1 && tau != -1) {
    throw ValidationError("axis_ket: outcome must be +1 or -1");
  }
  const SpectralDecomposition s = spectral(HermitianOperator(pauli_dot(q.direction())));
  // Eigenvalues ascend, so column 0 carries -1 and column 1 carries +1.
  return s.vectors.col(tau == 1 ? 1 : 0);
}

QubitState probe_from_wkd(double w, double kappa, double delta) {
  if (w < 0.0 || w > 1.0) {
    throw ValidationError("probe_from_wkd: weight must be in [0, 1]");
  }
  const double kmax = std::sqrt(w * (1.0 - w));
  if (kappa < 0.0 || kappa > kmax + 1e-12) {
    throw ValidationError("probe_from_wkd: coherence exceeds sqrt(w(1-w))");
  }
  Vec3 m;
  m[0] = 2.0 * kappa * std::cos(delta);
  m[1] = 2.0 * kappa * std::sin(delta);
  m[2] = 2.0 * w - 1.0;
  return QubitState(m);
}

}  // namespace qmeter
