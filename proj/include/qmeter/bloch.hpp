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

#include <Eigen/Dense>

#include "qmeter/operators.hpp"

namespace qmeter {

using Vec3 = Eigen::Vector3d;

// sigma_x, sigma_y, sigma_z as 2x2 complex matrices.
Matrix pauli(int axis);

// v[0]*sigma_x + v[1]*sigma_y + v[2]*sigma_z.
Matrix pauli_dot(const Vec3& v);

// Polarization vector with |m| <= 1 (mixed states live inside the ball).
class QubitState {
 public:
  explicit QubitState(Vec3 m);

  const Vec3& polarization() const { return m_; }
  bool pure(double tol = 1e-12) const { return m_.norm() >= 1.0 - tol; }

 private:
  Vec3 m_;
};

// Unit direction; input must be normalized within 1e-9 and is renormalized
// exactly on storage.
class QubitAxis {
 public:
  explicit QubitAxis(Vec3 u);

  const Vec3& direction() const { return u_; }

 private:
  Vec3 u_;
};

DensityOperator bloch_to_density(const QubitState& s);

// Inverse of bloch_to_density; requires a 2x2 density operator.
Vec3 density_to_bloch(const DensityOperator& rho);

// Projector (1 + tau * q.sigma)/2 for outcome tau in {+1, -1}.
Effect readout_projector(const QubitAxis& q, int tau);

// General qubit effect trace_part/2 * (1 + m.sigma); eigenvalues are
// trace_part/2 * (1 +- |m|), validated by the Effect constructor.
Effect effect_from_bloch(const Vec3& m, double trace_part);

// Decomposes a 2x2 effect as t/2 * (1 + m.sigma); returns {m, t}.
struct EffectBloch {
  Vec3 m;
  double trace_part;
};
EffectBloch effect_to_bloch(const Effect& e);

// Phase-fixed eigenvector of q.sigma with eigenvalue tau.
Vector axis_ket(const QubitAxis& q, int tau);

// Probe preparation from population weight w, coherence kappa and phase delta:
// polarization (2k cos d, 2k sin d, 2w - 1). Requires 0 <= w <= 1 and
// 0 <= kappa <= sqrt(w(1-w)) so the state stays inside the Bloch ball.
QubitState probe_from_wkd(double w, double kappa, double delta);

}  // namespace qmeter
