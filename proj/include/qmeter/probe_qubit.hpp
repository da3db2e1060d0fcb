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

#include "qmeter/weak_values.hpp"
#include "qmeter/wigner.hpp"

namespace qmeter {

// A finite-dimensional pointer: its state and the hermitian generator the
// system couples to (the joint evolution is
// exp(i * coupling * measured_observable (x) write_in)).
struct ProbeSpec {
  DensityOperator state;
  HermitianOperator write_in;

  ProbeSpec(DensityOperator state_in, HermitianOperator write_in_in);

  Eigen::Index dim() const { return state.dim(); }
};

struct ConditionalProbeState {
  DensityOperator state;
  double normalizer;  // ratio of postselection probabilities with/without coupling
};

// Pointer state after postselecting the system, exact in the coupling. With
// c = cos(coupling * write_in), s = sin(coupling * write_in) the unnormalized
// state is
//   c rho c - i a_w^* c rho s + i a_w s rho c + b_w s rho s,
// and the normalizer is its trace. Requires resolvable weak-value ratios;
// throws NullConditioningError when the normalizer falls below 1e-14.
ConditionalProbeState conditional_probe_state(const ProbeSpec& probe,
                                              const WeakValueSet& wv,
                                              double coupling);

// Success probability of the postselection, exact in the coupling:
//   (omega+beta)/2 - Im(alpha) <sin(2 coupling P)> + (omega-beta)/2 <cos(2 coupling P)>
// with plain averages over the initial pointer state.
double postselection_probability_general(const ProbeSpec& probe,
                                         const WeakValueSet& wv,
                                         double coupling);

// Postselected average of f(write_in); everything commutes with the
// generator, so only spectral averages of the initial state appear.
double conditional_average_fP(const ProbeSpec& probe, const WeakValueSet& wv,
                              double coupling,
                              const std::function<double(double)>& f);

// Postselected average of g(obs) for an observable that need not commute with
// the generator. The commutator terms enter through averages of g conjugated
// by exp(+-i coupling write_in), the interference terms through the
// generalized obs/write_in quasiprobability table. Both spectra must be
// nondegenerate.
double conditional_average_gO(const ProbeSpec& probe,
                              const HermitianOperator& obs,
                              const WeakValueSet& wv, double coupling,
                              const std::function<double(double)>& g);

// Uniform lattice pointer: position diag(origin + k * spacing) for
// k = 0..dim-1 and a shift generator built so that
// exp(i * m * spacing * generator) translates the position cyclically by
// exactly m sites.
class LatticeProbe {
 public:
  LatticeProbe(int dim, double origin, double spacing, DensityOperator state);

  const HermitianOperator& position() const { return position_; }
  const HermitianOperator& shift_generator() const { return generator_; }
  const DensityOperator& state() const { return state_; }
  ProbeSpec probe() const { return {state_, generator_}; }

  int dim() const { return dim_; }
  double origin() const { return origin_; }
  double spacing() const { return spacing_; }

  // Couplings must sit on the grid: coupling = m * spacing with integer m
  // (within 1e-9), otherwise OffLatticeCouplingError.
  int shift_steps(double coupling) const;

 private:
  int dim_;
  double origin_;
  double spacing_;
  DensityOperator state_;
  HermitianOperator position_;
  HermitianOperator generator_;
};

// Postselected average of g(position) on the lattice. Position shifted by
// +-coupling means cyclic index shifts, so the translated averages are exact
// sums; interference terms go through the quasiprobability table as in
// conditional_average_gO.
double conditional_average_gQ(const LatticeProbe& probe, const WeakValueSet& wv,
                              double coupling,
                              const std::function<double(double)>& g);

}  // namespace qmeter
