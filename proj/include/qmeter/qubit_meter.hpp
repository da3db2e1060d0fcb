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

// Finite-dimensional system measured by a qubit meter. The joint evolution is
// exp(i * coupling * observable (x) (1 - p.tau)/2); the meter is read out
// along q, the system postselected on E_f.
struct GeneralSystemScenario {
  DensityOperator system_state;
  Effect postselect;
  HermitianOperator observable;
  QubitState probe_prep;       // n (may be mixed)
  QubitAxis interaction_axis;  // p
  QubitAxis readout_axis;      // q
  double coupling = 0.0;

  GeneralSystemScenario(DensityOperator system_state_in, Effect postselect_in,
                        HermitianOperator observable_in,
                        QubitState probe_prep_in, QubitAxis interaction_axis_in,
                        QubitAxis readout_axis_in, double coupling_in);
};

// System-side correlators at the two meter branches:
//   gamma(t1, t2) = Tr{ E_f exp(i c A (1-t1)/2) rho exp(-i c A (1-t2)/2) }.
// gamma(+,+) is always the zero-coupling probability omega; the matrix is
// hermitian as a 2x2 array. The +1 branch exponent is exactly the identity.
struct GammaMatrix {
  Complex pp, pm, mp, mm;

  Complex at(int t1, int t2) const;
};

GammaMatrix gamma_matrix(const GeneralSystemScenario& sc);

WeakValueSet scenario_weak_values(const GeneralSystemScenario& sc);

// For pure preparation and rank-one postselection the gamma matrix factorizes
// into branch amplitudes; this is their ratio
//   <psi_f| exp(i * coupling * A) |psi_i> / <psi_f|psi_i>,
// which deforms the ordinary weak value at finite coupling (for A^2 = 1 it
// equals cos(coupling) + i sin(coupling) a_w). Throws when the preparation is
// mixed, the postselection is not rank one, or the overlap vanishes.
Complex modular_weak_value(const GeneralSystemScenario& sc);

// Success probability of the postselection, exact in the coupling.
double postselection_probability_exact(const GeneralSystemScenario& sc);

// Exact joint probability P(E_f, tau) via the branch correlators.
double exact_joint_probability(const GeneralSystemScenario& sc, int tau);

// Exact postselected readout average, Q(+1) - Q(-1) over their sum.
double exact_conditional_readout(const GeneralSystemScenario& sc);

enum class WeakOrder { Linear, RetainedQuadratic };

// Small-coupling approximations to the postselected readout average:
//   Linear            first order in the coupling,
//   RetainedQuadratic the positivity-preserving truncation that keeps the
//                     cross term quadratic in the coupling and resums the
//                     normalization.
double weak_conditional_readout(const GeneralSystemScenario& sc,
                                WeakOrder order);

// Joint probability of the retained-quadratic truncation; nonnegative by
// construction up to rounding.
double weak_joint_probability(const GeneralSystemScenario& sc, int tau);

}  // namespace qmeter
