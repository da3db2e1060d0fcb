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

#include <cstdint>
#include <vector>

#include "qmeter/bloch.hpp"
#include "qmeter/operators.hpp"
#include "qmeter/random.hpp"

namespace qmeter {

// Brute-force reference: builds the joint system-probe state, applies the
// full coupling unitary exp(i * coupling * system_coupling (x) probe_coupling)
// and extracts statistics by plain Born-rule traces. Deliberately shares only
// operator-core with the closed-form modules it is used to check.
struct JointScenario {
  DensityOperator system_state;
  Effect postselect;  // on the system factor
  DensityOperator probe_state;
  HermitianOperator system_coupling;
  HermitianOperator probe_coupling;
  double coupling = 0.0;

  JointScenario(DensityOperator system_state_in, Effect postselect_in,
                DensityOperator probe_state_in,
                HermitianOperator system_coupling_in,
                HermitianOperator probe_coupling_in, double coupling_in);

  Eigen::Index system_dim() const { return system_state.dim(); }
  Eigen::Index probe_dim() const { return probe_state.dim(); }
};

// Evolved joint state U (rho_S (x) rho_P) U^dagger.
DensityOperator evolve_joint(const JointScenario& sc);

// Tr[(E_f (x) 1) rho'].
double joint_postselection_probability(const JointScenario& sc);

// Tr_S[(E_f (x) 1) rho'] / P; throws NullConditioningError for P <= 1e-14.
DensityOperator conditional_probe(const JointScenario& sc);

// Tr[obs * conditional_probe].
double conditional_probe_average(const JointScenario& sc,
                                 const HermitianOperator& obs);

// Joint outcome probabilities Tr[(E_f (x) effect_k) rho']; the effects must
// resolve the identity on the probe within 1e-10.
std::vector<double> readout_distribution(const JointScenario& sc,
                                         const std::vector<Effect>& effects);

// Deterministic random scenario ingredients for verification campaigns.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }

  Matrix ginibre(int d);
  DensityOperator density(int d);
  DensityOperator pure_density(int d);
  Vector pure_state(int d);
  // c * rho_E / max_eigenvalue(rho_E) with c uniform in [0.05, 1]: bounded
  // away from zero so closed-form-vs-oracle comparisons are well conditioned.
  Effect effect(int d);
  Effect rank_one_effect(int d);
  HermitianOperator hermitian(int d);
  // Random hermitian square root of the identity with both signs present.
  HermitianOperator involution(int d);
  QubitState qubit_state(bool pure);
  QubitAxis axis();

 private:
  Rng rng_;
};

}  // namespace qmeter
