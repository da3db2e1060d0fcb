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

#include "qmeter/weak_values.hpp"

namespace qmeter {

// Qubit system measured by a qubit probe. The joint evolution is
// exp(i * coupling * (1 - a.sigma)/2 (x) (1 - p.tau)/2), the probe is then
// read out along q with outcomes +-1 and the system is postselected on E_f.
struct QubitQubitScenario {
  QubitState system_prep;     // m_i
  Effect postselect;          // E_f, 2x2
  QubitAxis system_axis;      // a
  QubitState probe_prep;      // n (may be mixed)
  QubitAxis interaction_axis; // p
  QubitAxis readout_axis;     // q
  double coupling = 0.0;      // lambda, radians
};

// cos/sin of half the coupling; every closed form below depends on lambda
// only through this pair.
struct CS {
  double c;
  double s;
};
CS half_angle(double coupling);

WeakValueSet scenario_weak_values(const QubitQubitScenario& sc);

// Success probability of the postselection, exact in the coupling.
double postselection_probability(const QubitQubitScenario& sc);

// Exact postselected readout average <tau>; throws NullConditioningError when
// the postselection probability is not resolvable.
double conditional_average_tau(const QubitQubitScenario& sc);

// Joint probability P(E_f, tau) at coupling pi (the probe-flip point);
// validates |coupling - pi| <= 1e-12.
double joint_probability(const QubitQubitScenario& sc, int tau);

// First order in the coupling around the zero-coupling readout q.n.
double first_order_average_tau(const QubitQubitScenario& sc);

// Readout average at coupling pi for a probe prepared at angle eps from the
// interaction axis toward an orthogonal readout axis:
//   <tau> = 2 Re(a_w) sin(eps) / ((1 + cos eps) + (1 - cos eps) b_w).
// eps equal to 0 or pi exactly is rejected (the ratio degenerates).
double amplification_average(const WeakValueSet& wv, double eps);

}  // namespace qmeter
