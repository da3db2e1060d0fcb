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

#include <functional>
#include <vector>

#include "qmeter/operators.hpp"

namespace qmeter {

// Joint quasiprobability of one observable's eigenvalues against eigenvalue
// midpoints of a second, noncommuting one:
//   weight(i, M) = sum over pairs (j,k) with (p_j + p_k)/2 = M of
//                  <o_i|p_j> <p_j|rho|p_k> <p_k|o_i>.
// Conjugate pairs (j,k), (k,j) always share a midpoint, so weights are real;
// the discarded antisymmetric part is tracked in imag_residual. Rows sum to
// the first observable's ordinary distribution; columns at single-eigenvalue
// midpoints sum to the second observable's, and the remaining columns sum to
// zero. The table is not symmetric under swapping the two observables.
struct WignerTable {
  Eigen::VectorXd o_values;        // spectrum of the first observable
  Eigen::VectorXd p_values;        // spectrum of the second observable
  std::vector<double> midpoints;   // ascending, merged within 1e-9
  Eigen::MatrixXd weight;          // o index x midpoint index
  double imag_residual = 0.0;
};

// Both spectra must be nondegenerate (pairwise gaps above 1e-10).
WignerTable build_wigner(const HermitianOperator& first,
                         const HermitianOperator& second,
                         const DensityOperator& rho);

// sum over the table of f(o_value, midpoint) * weight.
double generalized_average(const WignerTable& table,
                           const std::function<double(double, double)>& f);

}  // namespace qmeter
