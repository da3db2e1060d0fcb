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

#include "qmeter/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qmeter/errors.hpp"
#include "qmeter/oracle.hpp"
#include "qmeter/parallel.hpp"
#include "qmeter/probe_qubit.hpp"
#include "qmeter/qubit_meter.hpp"
#include "qmeter/qubit_qubit.hpp"
#include "qmeter/random.hpp"
#include "qmeter/weak_values.hpp"
#include "qmeter/wigner.hpp"

namespace qmeter {
namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kTableTol = 1e-12;
constexpr int kWignerDimCap = 6;

HermitianOperator lower_projector(const QubitAxis& axis) {
  Matrix m = 0.5 * (Matrix::Identity(2, 2) - pauli_dot(axis.direction()));
  return HermitianOperator(m);
}

// Qubit preparation/postselection/axis with a resolvable postselection, so
// conditional quantities are well posed for closed-form-vs-oracle deltas.
struct QubitSide {
  QubitState prep;
  Effect post;
  QubitAxis axis;
  WeakValueSet wv;
};

QubitSide sample_qubit_side(ScenarioSampler& s) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    QubitState prep = s.qubit_state(false);
    Effect post = s.effect(2);
    QubitAxis axis = s.axis();
    WeakValueSet wv = geometric_weak_values(prep, post, axis);
    if (wv.defined && wv.omega >= 1e-6) return {prep, post, axis, wv};
  }
  throw NumericalError("verify: could not sample a resolvable qubit side");
}

double case_qubit_qubit(std::uint64_t seed) {
  ScenarioSampler s(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    QubitQubitScenario sc{s.qubit_state(false), s.effect(2), s.axis(),
                          s.qubit_state(false), s.axis(),     s.axis(),
                          s.rng().uniform(0.0, 2.0 * std::numbers::pi)};
    double prob = postselection_probability(sc);
    if (prob < 1e-6) continue;
    JointScenario joint(bloch_to_density(sc.system_prep), sc.postselect,
                        bloch_to_density(sc.probe_prep),
                        lower_projector(sc.system_axis),
                        lower_projector(sc.interaction_axis), sc.coupling);
    double err = std::abs(prob - joint_postselection_probability(joint));
    HermitianOperator readout(pauli_dot(sc.readout_axis.direction()));
    err = std::max(err, std::abs(conditional_average_tau(sc) -
                                 conditional_probe_average(joint, readout)));

    QubitQubitScenario flip = sc;
    flip.coupling = std::numbers::pi;
    JointScenario flip_joint(bloch_to_density(flip.system_prep), flip.postselect,
                             bloch_to_density(flip.probe_prep),
                             lower_projector(flip.system_axis),
                             lower_projector(flip.interaction_axis),
                             flip.coupling);
    std::vector<Effect> effects = {readout_projector(flip.readout_axis, +1),
                                   readout_projector(flip.readout_axis, -1)};
    std::vector<double> ref = readout_distribution(flip_joint, effects);
    err = std::max(err, std::abs(joint_probability(flip, +1) - ref[0]));
    err = std::max(err, std::abs(joint_probability(flip, -1) - ref[1]));
    return err;
  }
  throw NumericalError("verify: could not sample a resolvable scenario");
}

double case_probe_qubit(std::uint64_t seed, int dim) {
  ScenarioSampler s(seed);
  QubitSide side = sample_qubit_side(s);
  ProbeSpec probe(s.density(dim), s.hermitian(dim));
  HermitianOperator obs = s.hermitian(dim);
  double coupling = s.rng().uniform(0.0, 2.0);

  JointScenario joint(bloch_to_density(side.prep), side.post,
                      probe.state, HermitianOperator(pauli_dot(side.axis.direction())),
                      probe.write_in, coupling);

  double err = std::abs(
      postselection_probability_general(probe, side.wv, coupling) -
      joint_postselection_probability(joint));

  ConditionalProbeState cond = conditional_probe_state(probe, side.wv, coupling);
  DensityOperator ref = conditional_probe(joint);
  err = std::max(
      err, (cond.state.matrix() - ref.matrix()).cwiseAbs().maxCoeff());

  auto ident = [](double x) { return x; };
  err = std::max(err,
                 std::abs(conditional_average_fP(probe, side.wv, coupling, ident) -
                          conditional_probe_average(joint, probe.write_in)));
  err = std::max(err,
                 std::abs(conditional_average_gO(probe, obs, side.wv, coupling, ident) -
                          conditional_probe_average(joint, obs)));
  return err;
}

double case_qubit_meter(std::uint64_t seed, int dim) {
  ScenarioSampler s(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    GeneralSystemScenario sc(s.density(dim), s.effect(dim), s.hermitian(dim),
                             s.qubit_state(false), s.axis(), s.axis(),
                             s.rng().uniform(0.0, 2.0));
    double prob = postselection_probability_exact(sc);
    if (prob < 1e-6) continue;
    JointScenario joint(sc.system_state, sc.postselect, bloch_to_density(sc.probe_prep),
                        sc.observable, lower_projector(sc.interaction_axis),
                        sc.coupling);
    std::vector<Effect> effects = {readout_projector(sc.readout_axis, +1),
                                   readout_projector(sc.readout_axis, -1)};
    std::vector<double> ref = readout_distribution(joint, effects);
    double plus = exact_joint_probability(sc, +1);
    double minus = exact_joint_probability(sc, -1);
    double err = std::max(std::abs(plus - ref[0]), std::abs(minus - ref[1]));
    err = std::max(err, std::abs(plus + minus - prob));
    return err;
  }
  throw NumericalError("verify: could not sample a resolvable scenario");
}

double case_wigner(std::uint64_t seed, int dim) {
  ScenarioSampler s(seed);
  DensityOperator rho = s.density(dim);
  HermitianOperator first = s.hermitian(dim);
  HermitianOperator second = s.hermitian(dim);
  WignerTable table = build_wigner(first, second, rho);

  double err = table.imag_residual;

  SpectralDecomposition so = spectral(first);
  Matrix in_first = so.vectors.adjoint() * rho.matrix() * so.vectors;
  for (Eigen::Index i = 0; i < table.weight.rows(); ++i) {
    err = std::max(err, std::abs(table.weight.row(i).sum() -
                                 in_first(i, i).real()));
  }

  SpectralDecomposition sp = spectral(second);
  Matrix in_second = sp.vectors.adjoint() * rho.matrix() * sp.vectors;
  for (std::size_t c = 0; c < table.midpoints.size(); ++c) {
    double column = table.weight.col(static_cast<Eigen::Index>(c)).sum();
    double expected = 0.0;
    for (Eigen::Index j = 0; j < table.p_values.size(); ++j) {
      if (std::abs(table.p_values[j] - table.midpoints[c]) <= 1e-9) {
        expected = in_second(j, j).real();
        break;
      }
    }
    err = std::max(err, std::abs(column - expected));
  }
  return err;
}

double case_lattice(std::uint64_t seed, int dim) {
  ScenarioSampler s(seed);
  QubitSide side = sample_qubit_side(s);
  double origin = s.rng().uniform(-1.0, 1.0);
  double spacing = s.rng().uniform(0.3, 1.2);
  LatticeProbe lattice(dim, origin, spacing, s.density(dim));
  int steps = s.rng().uniform_int(-(dim - 1), dim - 1);
  double coupling = steps * spacing;

  auto ident = [](double x) { return x; };
  double closed = conditional_average_gQ(lattice, side.wv, coupling, ident);

  JointScenario joint(bloch_to_density(side.prep), side.post, lattice.state(),
                      HermitianOperator(pauli_dot(side.axis.direction())),
                      lattice.shift_generator(), coupling);
  return std::abs(closed - conditional_probe_average(joint, lattice.position()));
}

VerifyRow campaign_row(int config, int dim, const VerifyOptions& options,
                       double tolerance,
                       const std::function<double(std::uint64_t)>& one_case) {
  std::vector<double> errors(static_cast<std::size_t>(options.cases), 0.0);
  parallel_for(options.cases, options.threads, [&](int i) {
    std::uint64_t salt = (static_cast<std::uint64_t>(config) << 40) ^
                         (static_cast<std::uint64_t>(dim) << 32) ^
                         static_cast<std::uint64_t>(i);
    errors[static_cast<std::size_t>(i)] = one_case(derive_seed(options.seed, salt));
  });
  VerifyRow row;
  row.config = config;
  row.dim = dim;
  row.cases = options.cases;
  row.max_abs_error = *std::max_element(errors.begin(), errors.end());
  row.tolerance = tolerance;
  row.passed = row.max_abs_error <= tolerance;
  return row;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.cases < 1 || options.cases > 1000000) {
    throw ValidationError("verify: cases must be in [1, 1000000]");
  }
  if (options.threads < 1 || options.threads > 256) {
    throw ValidationError("verify: threads must be in [1, 256]");
  }
  if (options.dims.empty()) {
    throw ValidationError("verify: dims must not be empty");
  }
  std::vector<int> dims = options.dims;
  for (int d : dims) {
    if (d < 2 || d > 64) throw ValidationError("verify: dims must lie in [2, 64]");
  }
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

  std::vector<int> wigner_dims;
  for (int d : dims) wigner_dims.push_back(std::min(d, kWignerDimCap));
  std::sort(wigner_dims.begin(), wigner_dims.end());
  wigner_dims.erase(std::unique(wigner_dims.begin(), wigner_dims.end()),
                    wigner_dims.end());

  VerifyReport report;
  report.rows.push_back(campaign_row(0, 2, options, kOracleTol,
                                     [](std::uint64_t seed) {
                                       return case_qubit_qubit(seed);
                                     }));
  for (int d : dims) {
    report.rows.push_back(campaign_row(1, d, options, kOracleTol,
                                       [d](std::uint64_t seed) {
                                         return case_probe_qubit(seed, d);
                                       }));
  }
  for (int d : dims) {
    report.rows.push_back(campaign_row(2, d, options, kOracleTol,
                                       [d](std::uint64_t seed) {
                                         return case_qubit_meter(seed, d);
                                       }));
  }
  for (int d : wigner_dims) {
    report.rows.push_back(campaign_row(3, d, options, kTableTol,
                                       [d](std::uint64_t seed) {
                                         return case_wigner(seed, d);
                                       }));
  }
  for (int d : dims) {
    report.rows.push_back(campaign_row(4, d, options, kOracleTol,
                                       [d](std::uint64_t seed) {
                                         return case_lattice(seed, d);
                                       }));
  }

  VerifyRow summary;
  summary.config = -1;
  summary.dim = 0;
  summary.cases = 0;
  summary.max_abs_error = 0.0;
  summary.tolerance = kOracleTol;
  summary.passed = true;
  for (const VerifyRow& row : report.rows) {
    summary.cases += row.cases;
    summary.max_abs_error = std::max(summary.max_abs_error, row.max_abs_error);
    summary.passed = summary.passed && row.passed;
  }
  report.all_passed = summary.passed;
  report.rows.push_back(summary);
  return report;
}

ResultTable verify_table(const VerifyReport& report) {
  ResultTable table;
  table.columns = {"config", "dim", "cases", "max_abs_error", "tolerance",
                   "passed"};
  for (const VerifyRow& row : report.rows) {
    table.rows.push_back({static_cast<double>(row.config),
                          static_cast<double>(row.dim),
                          static_cast<double>(row.cases), row.max_abs_error,
                          row.tolerance, row.passed ? 1.0 : 0.0});
  }
  return table;
}

}  // namespace qmeter
