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

#include "qmeter/oracle.hpp"

#include <cmath>

namespace qmeter {

JointScenario::JointScenario(DensityOperator system_state_in,
                             Effect postselect_in,
                             DensityOperator probe_state_in,
                             HermitianOperator system_coupling_in,
                             HermitianOperator probe_coupling_in,
                             double coupling_in)
    : system_state(std::move(system_state_in)),
      postselect(std::move(postselect_in)),
      probe_state(std::move(probe_state_in)),
      system_coupling(std::move(system_coupling_in)),
      probe_coupling(std::move(probe_coupling_in)),
      coupling(coupling_in) {
  if (postselect.dim() != system_state.dim() ||
      system_coupling.dim() != system_state.dim()) {
    throw ValidationError("JointScenario: system-side dimensions disagree");
  }
  if (probe_coupling.dim() != probe_state.dim()) {
    throw ValidationError("JointScenario: probe-side dimensions disagree");
  }
  if (system_state.dim() * probe_state.dim() > 256) {
    throw ValidationError("JointScenario: joint dimension exceeds 256");
  }
  if (!std::isfinite(coupling)) {
    throw ValidationError("JointScenario: coupling must be finite");
  }
}

DensityOperator evolve_joint(const JointScenario& sc) {
  const Matrix x =
      tensor(sc.system_coupling.matrix(), sc.probe_coupling.matrix());
  const Matrix u = herm_exp(HermitianOperator(x), sc.coupling);
  const Matrix joint = tensor(sc.system_state.matrix(), sc.probe_state.matrix());
  return DensityOperator(u * joint * u.adjoint());
}

double joint_postselection_probability(const JointScenario& sc) {
  const DensityOperator evolved = evolve_joint(sc);
  const Matrix selector =
      tensor(sc.postselect.matrix(),
             Matrix::Identity(sc.probe_dim(), sc.probe_dim()));
  return (selector * evolved.matrix()).trace().real();
}

DensityOperator conditional_probe(const JointScenario& sc) {
  const DensityOperator evolved = evolve_joint(sc);
  const Matrix selector =
      tensor(sc.postselect.matrix(),
             Matrix::Identity(sc.probe_dim(), sc.probe_dim()));
  const Matrix selected = selector * evolved.matrix();
  const double p = selected.trace().real();
  if (p <= 1e-14) {
    throw NullConditioningError();
  }
  const Matrix reduced =
      partial_trace(selected, sc.system_dim(), sc.probe_dim(), Keep::Second);
  // Hermitize away the floating antisymmetric residue before validation.
  const Matrix state = 0.5 * (reduced + reduced.adjoint()) / p;
  return DensityOperator(state);
}

double conditional_probe_average(const JointScenario& sc,
                                 const HermitianOperator& obs) {
  if (obs.dim() != sc.probe_dim()) {
    throw ValidationError("conditional_probe_average: dimension mismatch");
  }
  return (obs.matrix() * conditional_probe(sc).matrix()).trace().real();
}

std::vector<double> readout_distribution(const JointScenario& sc,
                                         const std::vector<Effect>& effects) {
  if (effects.empty()) {
    throw ValidationError("readout_distribution: no effects given");
  }
  Matrix sum = Matrix::Zero(sc.probe_dim(), sc.probe_dim());
  for (const Effect& e : effects) {
    if (e.dim() != sc.probe_dim()) {
      throw ValidationError("readout_distribution: effect dimension mismatch");
    }
    sum += e.matrix();
  }
  if ((sum - Matrix::Identity(sc.probe_dim(), sc.probe_dim()))
          .cwiseAbs()
          .maxCoeff() > 1e-10) {
    throw ValidationError(
        "readout_distribution: effects do not resolve the identity");
  }
  const DensityOperator evolved = evolve_joint(sc);
  std::vector<double> out;
  out.reserve(effects.size());
  for (const Effect& e : effects) {
    const Matrix selector = tensor(sc.postselect.matrix(), e.matrix());
    out.push_back((selector * evolved.matrix()).trace().real());
  }
  return out;
}

Matrix ScenarioSampler::ginibre(int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng_.complex_normal();
  return m;
}

DensityOperator ScenarioSampler::density(int d) {
  const Matrix g = ginibre(d);
  Matrix m = g * g.adjoint();
  m /= m.trace();
  return DensityOperator(std::move(m));
}

Vector ScenarioSampler::pure_state(int d) {
  Vector v(d);
  double n = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = rng_.complex_normal();
    n = v.norm();
  } while (n < 1e-6);
  return v / n;
}

DensityOperator ScenarioSampler::pure_density(int d) {
  const Vector v = pure_state(d);
  return DensityOperator(v * v.adjoint());
}

Effect ScenarioSampler::effect(int d) {
  const DensityOperator rho = density(d);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(),
                                               Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  const double c = rng_.uniform(0.05, 1.0);
  return Effect(c / top * rho.matrix());
}

Effect ScenarioSampler::rank_one_effect(int d) {
  const Vector v = pure_state(d);
  const double c = rng_.uniform(0.05, 1.0);
  return Effect(c * v * v.adjoint());
}

HermitianOperator ScenarioSampler::hermitian(int d) {
  const Matrix g = ginibre(d);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

HermitianOperator ScenarioSampler::involution(int d) {
  const Eigen::HouseholderQR<Matrix> qr(ginibre(d));
  Matrix q = qr.householderQ();
  Eigen::VectorXd signs(d);
  for (int i = 0; i < d; ++i) signs[i] = rng_.uniform() < 0.5 ? -1.0 : 1.0;
  signs[0] = 1.0;
  if (d > 1) signs[d - 1] = -1.0;  // both eigenvalues always present
  const Matrix m = q * signs.cast<Complex>().asDiagonal() * q.adjoint();
  return HermitianOperator(0.5 * (m + m.adjoint()));
}

QubitState ScenarioSampler::qubit_state(bool pure) {
  const double r = pure ? 1.0 : rng_.uniform();
  return QubitState(r * rng_.unit3());
}

QubitAxis ScenarioSampler::axis() { return QubitAxis(rng_.unit3()); }

}  // namespace qmeter
