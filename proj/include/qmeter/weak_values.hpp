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

#include "qmeter/bloch.hpp"
#include "qmeter/operators.hpp"

namespace qmeter {

// The three correlators that parametrize every closed form in this library:
//   omega = Tr(E_f rho_i)           zero-coupling postselection probability
//   alpha = Tr(A E_f rho_i)
//   beta  = Tr(A E_f A rho_i)       real and nonnegative
// plus their ratios a_w = alpha/omega, b_w = beta/omega when omega is
// resolvable against the effect's scale (omega > 1e-14 * Tr E_f).
struct WeakValueSet {
  double omega = 0.0;
  Complex alpha{0.0, 0.0};
  double beta = 0.0;
  double scale = 1.0;  // Tr E_f
  bool defined = false;
  Complex a_w{0.0, 0.0};
  double b_w = 0.0;
};

// Assembles ratios from raw correlators; validates beta >= -1e-10.
WeakValueSet assemble_weak_values(double omega, Complex alpha, double beta,
                                  double scale);

// Tr(A^m E A^n rho) for 0 <= m, n <= 4.
Complex normal_weak_value(const DensityOperator& rho, const Effect& e,
                          const HermitianOperator& a, int m, int n);

// Correlators by direct traces; works in any dimension where the operators
// agree. beta acquiring an imaginary part above 1e-10 is an internal error.
WeakValueSet weak_values_from_operators(const DensityOperator& rho,
                                        const Effect& e,
                                        const HermitianOperator& a);

// Closed Bloch-vector forms for qubit prep, qubit effect and a measurement
// axis; exactly equal to the trace path.
WeakValueSet geometric_weak_values(const QubitState& prep,
                                   const Effect& postselect,
                                   const QubitAxis& axis);

enum class PurityVerdict { ConsistentWithPure, MixedDetected };

// b_w - |a_w|^2 is zero exactly when both the preparation and the normalized
// effect are pure; a positive gap beyond tol certifies mixedness of at least
// one of them.
PurityVerdict purity_discriminator(const WeakValueSet& wv, double tol = 1e-8);

}  // namespace qmeter
