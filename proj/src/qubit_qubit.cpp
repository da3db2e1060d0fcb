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

#include "qmeter/qubit_qubit.hpp"

#include <cmath>
#include <numbers>

namespace qmeter {

namespace {

struct Geometry {
  double qn, qp, pn;   // pairwise dot products
  double qxn_p;        // (q x n) . p
};

Geometry geometry(const QubitQubitScenario& sc) {
  const Vec3& n = sc.probe_prep.polarization();
  const Vec3& p = sc.interaction_axis.direction();
  const Vec3& q = sc.readout_axis.direction();
  return {q.dot(n), q.dot(p), p.dot(n), q.cross(n).dot(p)};
}

}  // namespace

CS half_angle(double coupling) {
  return {std::cos(0.5 * coupling), std::sin(0.5 * coupling)};
}

WeakValueSet scenario_weak_values(const QubitQubitScenario& sc) {
  return geometric_weak_values(sc.system_prep, sc.postselect, sc.system_axis);
}

double postselection_probability(const QubitQubitScenario& sc) {
  const WeakValueSet wv = scenario_weak_values(sc);
  const Geometry g = geometry(sc);
  const CS cs = half_angle(sc.coupling);
  const double c2 = cs.c * cs.c, s2 = cs.s * cs.s, sc2 = cs.s * cs.c;
  return 0.5 * ((1.0 + c2 + s2 * g.pn) * wv.omega +
                2.0 * sc2 * (1.0 - g.pn) * wv.alpha.imag() +
                s2 * (1.0 - g.pn) * wv.beta);
}

double conditional_average_tau(const QubitQubitScenario& sc) {
  const WeakValueSet wv = scenario_weak_values(sc);
  const Geometry g = geometry(sc);
  const CS cs = half_angle(sc.coupling);
  const double c2 = cs.c * cs.c, s2 = cs.s * cs.s, sc2 = cs.s * cs.c;
  const double ap = wv.alpha.real(), as = wv.alpha.imag();

  const double den = (1.0 + c2 + s2 * g.pn) * wv.omega +
                     2.0 * sc2 * (1.0 - g.pn) * as + s2 * (1.0 - g.pn) * wv.beta;
  if (den <= 1e-14 * std::max(wv.scale, 1.0)) {
    throw NullConditioningError();
  }
  const double num =
      2.0 * c2 * g.qn * wv.omega + s2 * g.qp * (1.0 + g.pn) * wv.omega -
      2.0 * sc2 * g.qxn_p * wv.omega +
      2.0 * ap * (s2 * (g.qn - g.qp * g.pn) + sc2 * g.qxn_p) +
      2.0 * as * (sc2 * (g.qn - g.qp) - s2 * g.qxn_p) -
      wv.beta * s2 * g.qp * (1.0 - g.pn);
  return num / den;
}

double joint_probability(const QubitQubitScenario& sc, int tau) {
  if (tau != 1 && tau != -1) {
    throw ValidationError("joint_probability: outcome must be +1 or -1");
  }
  if (std::abs(sc.coupling - std::numbers::pi) > 1e-12) {
    throw ValidationError(
        "joint_probability: closed form only holds at coupling pi");
  }
  const WeakValueSet wv = scenario_weak_values(sc);

  // System dependence enters through the four components of E_f and rho_i in
  // the measurement-axis eigenbasis; the probe side stays operator-valued.
  const Complex cpp = 0.25 * (wv.omega + wv.beta + 2.0 * wv.alpha.real());
  const Complex cmm = 0.25 * (wv.omega + wv.beta - 2.0 * wv.alpha.real());
  const Complex cpm =
      0.25 * Complex(wv.omega - wv.beta, -2.0 * wv.alpha.imag());
  const Complex cmp = std::conj(cpm);

  const Matrix id = Matrix::Identity(2, 2);
  const Matrix proj =
      0.5 * (id + double(tau) * pauli_dot(sc.readout_axis.direction()));
  const Matrix flip = pauli_dot(sc.interaction_axis.direction());
  const Matrix rho = 0.5 * (id + pauli_dot(sc.probe_prep.polarization()));

  const Complex value = cpp * (proj * rho).trace() +
                        cmm * (proj * flip * rho * flip).trace() +
                        cpm * (proj * flip * rho).trace() +
                        cmp * (proj * rho * flip).trace();
  return value.real();
}

double first_order_average_tau(const QubitQubitScenario& sc) {
  const WeakValueSet wv = scenario_weak_values(sc);
  if (!wv.defined) {
    throw UndefinedWeakValueError();
  }
  const Geometry g = geometry(sc);
  return g.qn + 0.5 * sc.coupling *
                    ((wv.a_w.real() - 1.0) * g.qxn_p -
                     wv.a_w.imag() * (g.qp - g.qn * g.pn));
}

double amplification_average(const WeakValueSet& wv, double eps) {
  if (!wv.defined) {
    throw UndefinedWeakValueError();
  }
  if (eps == 0.0 || eps == std::numbers::pi) {
    throw ValidationError(
        "amplification_average: probe angle must avoid 0 and pi exactly");
  }
  const double den =
      (1.0 + std::cos(eps)) + (1.0 - std::cos(eps)) * wv.b_w;
  return 2.0 * wv.a_w.real() * std::sin(eps) / den;
}

}  // namespace qmeter
