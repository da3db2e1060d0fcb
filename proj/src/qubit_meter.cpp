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

#include "qmeter/qubit_meter.hpp"

#include <cmath>

namespace qmeter {

namespace {

struct Geometry {
  double qn, qp, pn;
  double qxn_p;
};

Geometry geometry(const GeneralSystemScenario& sc) {
  const Vec3& n = sc.probe_prep.polarization();
  const Vec3& p = sc.interaction_axis.direction();
  const Vec3& q = sc.readout_axis.direction();
  return {q.dot(n), q.dot(p), p.dot(n), q.cross(n).dot(p)};
}

// exp(i * coupling * A * (1 - tau)/2): identity on the +1 branch.
Matrix branch_factor(const GeneralSystemScenario& sc, int tau) {
  if (tau == 1) {
    return Matrix::Identity(sc.observable.dim(), sc.observable.dim());
  }
  return herm_exp(sc.observable, sc.coupling);
}

}  // namespace

GeneralSystemScenario::GeneralSystemScenario(
    DensityOperator system_state_in, Effect postselect_in,
    HermitianOperator observable_in, QubitState probe_prep_in,
    QubitAxis interaction_axis_in, QubitAxis readout_axis_in,
    double coupling_in)
    : system_state(std::move(system_state_in)),
      postselect(std::move(postselect_in)),
      observable(std::move(observable_in)),
      probe_prep(std::move(probe_prep_in)),
      interaction_axis(std::move(interaction_axis_in)),
      readout_axis(std::move(readout_axis_in)),
      coupling(coupling_in) {
  if (postselect.dim() != system_state.dim() ||
      observable.dim() != system_state.dim()) {
    throw ValidationError(
        "GeneralSystemScenario: system-side dimensions disagree");
  }
  if (!std::isfinite(coupling)) {
    throw ValidationError("GeneralSystemScenario: coupling must be finite");
  }
}

Complex GammaMatrix::at(int t1, int t2) const {
  if (t1 == 1 && t2 == 1) return pp;
  if (t1 == 1 && t2 == -1) return pm;
  if (t1 == -1 && t2 == 1) return mp;
  if (t1 == -1 && t2 == -1) return mm;
  throw ValidationError("GammaMatrix: outcomes must be +1 or -1");
}

GammaMatrix gamma_matrix(const GeneralSystemScenario& sc) {
  const Matrix plus = branch_factor(sc, 1);
  const Matrix minus = branch_factor(sc, -1);
  const Matrix& e = sc.postselect.matrix();
  const Matrix& rho = sc.system_state.matrix();
  GammaMatrix g;
  g.pp = (e * plus * rho * plus.adjoint()).trace();
  g.pm = (e * plus * rho * minus.adjoint()).trace();
  g.mp = (e * minus * rho * plus.adjoint()).trace();
  g.mm = (e * minus * rho * minus.adjoint()).trace();
  return g;
}

WeakValueSet scenario_weak_values(const GeneralSystemScenario& sc) {
  return weak_values_from_operators(sc.system_state, sc.postselect,
                                    sc.observable);
}

Complex modular_weak_value(const GeneralSystemScenario& sc) {
  // Pure preparation: top eigenvalue exhausts the trace.
  Eigen::SelfAdjointEigenSolver<Matrix> rho_solver(sc.system_state.matrix());
  const Eigen::Index d = sc.system_state.dim();
  if (rho_solver.eigenvalues()[d - 1] < 1.0 - 1e-10) {
    throw ValidationError("modular weak value: preparation must be pure");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> e_solver(sc.postselect.matrix());
  const Eigen::VectorXd ev = e_solver.eigenvalues();
  if (d > 1 && ev[d - 2] > 1e-10 * std::max(ev[d - 1], 1e-300)) {
    throw ValidationError("modular weak value: postselection must be rank one");
  }
  const Vector psi_i = rho_solver.eigenvectors().col(d - 1);
  const Vector psi_f = e_solver.eigenvectors().col(d - 1);

  const Complex overlap = psi_f.adjoint() * psi_i;
  if (std::abs(overlap) <= 1e-12) {
    throw UndefinedWeakValueError("modular weak value undefined: zero overlap");
  }
  const Matrix shifted = herm_exp(sc.observable, sc.coupling);
  const Complex displaced = psi_f.adjoint() * shifted * psi_i;
  return displaced / overlap;
}

double postselection_probability_exact(const GeneralSystemScenario& sc) {
  const GammaMatrix g = gamma_matrix(sc);
  const double pn = geometry(sc).pn;
  return 0.5 * ((g.pp + g.mm).real() + pn * (g.pp - g.mm).real());
}

double exact_joint_probability(const GeneralSystemScenario& sc, int tau) {
  if (tau != 1 && tau != -1) {
    throw ValidationError("exact_joint_probability: outcome must be +1 or -1");
  }
  const GammaMatrix g = gamma_matrix(sc);
  const Vector readout = axis_ket(sc.readout_axis, tau);
  const Vector branch_plus = axis_ket(sc.interaction_axis, 1);
  const Vector branch_minus = axis_ket(sc.interaction_axis, -1);
  const Matrix rho_p =
      0.5 * (Matrix::Identity(2, 2) + pauli_dot(sc.probe_prep.polarization()));

  const Vector branches[2] = {branch_plus, branch_minus};
  const int signs[2] = {1, -1};
  Complex sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex left = readout.adjoint() * branches[i];
      const Complex middle = branches[i].adjoint() * rho_p * branches[j];
      const Complex right = branches[j].adjoint() * readout;
      sum += left * middle * right * g.at(signs[i], signs[j]);
    }
  }
  return sum.real();
}

double exact_conditional_readout(const GeneralSystemScenario& sc) {
  const double plus = exact_joint_probability(sc, 1);
  const double minus = exact_joint_probability(sc, -1);
  const double total = plus + minus;
  if (total <= 1e-14) {
    throw NullConditioningError();
  }
  return (plus - minus) / total;
}

double weak_conditional_readout(const GeneralSystemScenario& sc,
                                WeakOrder order) {
  const WeakValueSet wv = scenario_weak_values(sc);
  if (!wv.defined) {
    throw UndefinedWeakValueError();
  }
  const Geometry g = geometry(sc);
  const double lam = sc.coupling;
  const double ap = wv.a_w.real(), as = wv.a_w.imag();
  if (order == WeakOrder::Linear) {
    return g.qn - lam * g.qxn_p * ap + lam * (g.qp - g.qn * g.pn) * as;
  }
  const double num = g.qn - lam * g.qxn_p * ap - lam * (g.qn - g.qp) * as -
                     0.5 * lam * lam * g.qp * (1.0 - g.pn) * wv.b_w;
  const double den = 1.0 - lam * (1.0 - g.pn) * as +
                     0.5 * lam * lam * (1.0 - g.pn) * wv.b_w;
  if (den <= 1e-14) {
    throw NullConditioningError();
  }
  return num / den;
}

double weak_joint_probability(const GeneralSystemScenario& sc, int tau) {
  if (tau != 1 && tau != -1) {
    throw ValidationError("weak_joint_probability: outcome must be +1 or -1");
  }
  const WeakValueSet wv = scenario_weak_values(sc);
  const Geometry g = geometry(sc);
  const double lam = sc.coupling;
  const double t = double(tau);
  return 0.5 * (wv.omega * (1.0 + t * g.qn) -
                lam * (wv.alpha.imag() * (1.0 - g.pn + t * (g.qn - g.qp)) +
                       wv.alpha.real() * t * g.qxn_p) +
                0.5 * lam * lam * wv.beta *
                    (1.0 - g.pn + t * (g.qp * g.pn - g.qp)));
}

}  // namespace qmeter
