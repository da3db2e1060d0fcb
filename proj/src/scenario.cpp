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

#include "qmeter/scenario.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmeter/bloch.hpp"
#include "qmeter/errors.hpp"
#include "qmeter/parallel.hpp"
#include "qmeter/probe_qubit.hpp"
#include "qmeter/qubit_meter.hpp"
#include "qmeter/qubit_qubit.hpp"
#include "qmeter/verify.hpp"
#include "qmeter/version.hpp"
#include "qmeter/weak_values.hpp"
#include "qmeter/wigner.hpp"

namespace qmeter {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("scenario field '" + path + "': " + what);
}

const json& require(const json& obj, const std::string& key,
                    const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

Vec3 vec3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    v[i] = number_at(j[static_cast<std::size_t>(i)],
                     path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(row_path, "expected " + std::to_string(n) + " entries (square matrix)");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      std::string cell_path = row_path + "[" + std::to_string(c) + "]";
      if (cell.is_number()) {
        m(r, c) = Complex(cell.get<double>(), 0.0);
      } else if (cell.is_array() && cell.size() == 2) {
        m(r, c) = Complex(number_at(cell[0], cell_path + "[0]"),
                          number_at(cell[1], cell_path + "[1]"));
      } else {
        fail(cell_path, "expected a number or [re, im]");
      }
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        fail(cell_path, "must be finite");
      }
    }
  }
  return m;
}

// Wraps constructor validation so messages carry the field path.
template <typename T, typename Fn>
T checked(const std::string& path, Fn&& make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

QubitState qubit_state_at(const json& j, const std::string& path) {
  Vec3 m = vec3_at(j, path);
  return checked<QubitState>(path, [&] { return QubitState(m); });
}

QubitAxis axis_at(const json& j, const std::string& path) {
  Vec3 u = vec3_at(j, path);
  return checked<QubitAxis>(path, [&] { return QubitAxis(u); });
}

DensityOperator density_at(const json& j, const std::string& path) {
  Matrix m = matrix_at(require(j, "matrix", path), path + ".matrix");
  return checked<DensityOperator>(path, [&] { return DensityOperator(m); });
}

HermitianOperator hermitian_at(const json& j, const std::string& path) {
  Matrix m = matrix_at(require(j, "matrix", path), path + ".matrix");
  return checked<HermitianOperator>(path, [&] { return HermitianOperator(m); });
}

Effect effect_at(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("matrix")) {
    Matrix m = matrix_at(j["matrix"], path + ".matrix");
    return checked<Effect>(path, [&] { return Effect(m); });
  }
  if (j.is_object() && j.contains("bloch")) {
    Vec3 m = vec3_at(j["bloch"], path + ".bloch");
    double t = number_at(require(j, "trace", path), path + ".trace");
    return checked<Effect>(path, [&] { return effect_from_bloch(m, t); });
  }
  fail(path, "expected {\"bloch\":..., \"trace\":...} or {\"matrix\":...}");
}

std::vector<double> couplings_at(const json& doc) {
  const json& j = require(doc, "coupling", "scenario");
  if (j.is_number()) return {number_at(j, "coupling")};
  if (!j.is_object()) fail("coupling", "expected a number or {start, stop, steps}");
  double start = number_at(require(j, "start", "coupling"), "coupling.start");
  double stop = number_at(require(j, "stop", "coupling"), "coupling.stop");
  const json& js = require(j, "steps", "coupling");
  if (!js.is_number_integer()) fail("coupling.steps", "expected an integer");
  auto steps = js.get<long long>();
  if (steps < 1 || steps > 100000) fail("coupling.steps", "must lie in [1, 100000]");
  std::vector<double> values(static_cast<std::size_t>(steps));
  for (long long k = 0; k < steps; ++k) {
    values[static_cast<std::size_t>(k)] =
        steps == 1 ? start
                   : start + (stop - start) * static_cast<double>(k) /
                         static_cast<double>(steps - 1);
  }
  return values;
}

// System side given as preparation + postselection + measured axis; the weak
// values must be resolvable for conditional sweeps.
struct QubitSide {
  QubitState prep;
  Effect post;
  QubitAxis axis;
};

QubitSide qubit_side_at(const json& doc) {
  const json& sys = require(doc, "system", "scenario");
  return {qubit_state_at(require(sys, "prep", "system"), "system.prep"),
          effect_at(require(sys, "postselect", "system"), "system.postselect"),
          axis_at(require(sys, "axis", "system"), "system.axis")};
}

void sweep_rows(ResultTable& table, const std::vector<double>& couplings,
                int threads,
                const std::function<std::vector<double>(double)>& row_fn) {
  table.rows.resize(couplings.size());
  parallel_for(static_cast<int>(couplings.size()), threads, [&](int i) {
    table.rows[static_cast<std::size_t>(i)] =
        row_fn(couplings[static_cast<std::size_t>(i)]);
  });
}

ResultTable eval_qubit_qubit(const json& doc, int threads) {
  QubitSide side = qubit_side_at(doc);
  const json& probe = require(doc, "probe", "scenario");
  QubitState probe_prep =
      qubit_state_at(require(probe, "prep", "probe"), "probe.prep");
  QubitAxis interaction =
      axis_at(require(probe, "interaction", "probe"), "probe.interaction");
  QubitAxis readout = axis_at(require(probe, "readout", "probe"), "probe.readout");
  std::vector<double> couplings = couplings_at(doc);

  ResultTable table;
  table.columns = {"lambda", "p_post", "tau_avg", "tau_first_order"};
  sweep_rows(table, couplings, threads, [&](double coupling) {
    QubitQubitScenario sc{side.prep,   side.post, side.axis, probe_prep,
                          interaction, readout,   coupling};
    return std::vector<double>{coupling, postselection_probability(sc),
                               conditional_average_tau(sc),
                               first_order_average_tau(sc)};
  });
  return table;
}

ResultTable eval_weak_values(const json& doc) {
  QubitSide side = qubit_side_at(doc);
  WeakValueSet wv = geometric_weak_values(side.prep, side.post, side.axis);
  if (!wv.defined) {
    throw ValidationError(
        "scenario: weak values undefined, the postselection has no overlap "
        "with the preparation");
  }
  PurityVerdict verdict = purity_discriminator(wv);
  ResultTable table;
  table.columns = {"omega",  "alpha_re", "alpha_im",      "beta",
                   "aw_re",  "aw_im",    "bw",            "mixed_detected"};
  table.rows.push_back({wv.omega, wv.alpha.real(), wv.alpha.imag(), wv.beta,
                        wv.a_w.real(), wv.a_w.imag(), wv.b_w,
                        verdict == PurityVerdict::MixedDetected ? 1.0 : 0.0});
  return table;
}

ResultTable eval_probe_qubit(const json& doc, int threads) {
  QubitSide side = qubit_side_at(doc);
  WeakValueSet wv = geometric_weak_values(side.prep, side.post, side.axis);
  if (!wv.defined) {
    throw ValidationError(
        "scenario: weak values undefined, the postselection has no overlap "
        "with the preparation");
  }
  const json& probe_j = require(doc, "probe", "scenario");
  DensityOperator state =
      density_at(require(probe_j, "state", "probe"), "probe.state");
  HermitianOperator write_in =
      hermitian_at(require(probe_j, "write_in", "probe"), "probe.write_in");
  ProbeSpec probe = checked<ProbeSpec>(
      "probe", [&] { return ProbeSpec(state, write_in); });
  bool with_obs = probe_j.contains("observable");
  std::optional<HermitianOperator> obs;
  if (with_obs) {
    obs = hermitian_at(probe_j["observable"], "probe.observable");
    if (obs->dim() != probe.dim()) {
      fail("probe.observable", "dimension mismatch with probe state");
    }
  }
  std::vector<double> couplings = couplings_at(doc);

  ResultTable table;
  table.columns = {"lambda", "p_post", "normalizer", "p_avg"};
  if (with_obs) table.columns.push_back("o_avg");
  auto ident = [](double x) { return x; };
  sweep_rows(table, couplings, threads, [&](double coupling) {
    std::vector<double> row{
        coupling, postselection_probability_general(probe, wv, coupling),
        conditional_probe_state(probe, wv, coupling).normalizer,
        conditional_average_fP(probe, wv, coupling, ident)};
    if (with_obs) {
      row.push_back(conditional_average_gO(probe, *obs, wv, coupling, ident));
    }
    return row;
  });
  return table;
}

ResultTable eval_qubit_meter(const json& doc, int threads) {
  const json& sys = require(doc, "system", "scenario");
  DensityOperator state =
      density_at(require(sys, "state", "system"), "system.state");
  Effect post = effect_at(require(sys, "postselect", "system"), "system.postselect");
  HermitianOperator observable =
      hermitian_at(require(sys, "observable", "system"), "system.observable");
  const json& probe = require(doc, "probe", "scenario");
  QubitState probe_prep =
      qubit_state_at(require(probe, "prep", "probe"), "probe.prep");
  QubitAxis interaction =
      axis_at(require(probe, "interaction", "probe"), "probe.interaction");
  QubitAxis readout = axis_at(require(probe, "readout", "probe"), "probe.readout");
  std::vector<double> couplings = couplings_at(doc);

  ResultTable table;
  table.columns = {"lambda",    "p_post",     "q_plus",       "q_minus",
                   "tau_exact", "tau_linear", "tau_quadratic"};
  sweep_rows(table, couplings, threads, [&](double coupling) {
    GeneralSystemScenario sc = checked<GeneralSystemScenario>("scenario", [&] {
      return GeneralSystemScenario(state, post, observable, probe_prep,
                                   interaction, readout, coupling);
    });
    double plus = exact_joint_probability(sc, +1);
    double minus = exact_joint_probability(sc, -1);
    double total = plus + minus;
    if (total <= 1e-14) throw NullConditioningError();
    return std::vector<double>{coupling,
                               postselection_probability_exact(sc),
                               plus / total,
                               minus / total,
                               exact_conditional_readout(sc),
                               weak_conditional_readout(sc, WeakOrder::Linear),
                               weak_conditional_readout(
                                   sc, WeakOrder::RetainedQuadratic)};
  });
  return table;
}

ResultTable eval_wigner(const json& doc) {
  DensityOperator rho = density_at(require(doc, "state", "scenario"), "state");
  HermitianOperator first =
      hermitian_at(require(doc, "observable", "scenario"), "observable");
  HermitianOperator second =
      hermitian_at(require(doc, "write_in", "scenario"), "write_in");
  if (first.dim() != rho.dim() || second.dim() != rho.dim()) {
    throw ValidationError("scenario: operator dimensions disagree with state");
  }
  WignerTable w = checked<WignerTable>(
      "scenario", [&] { return build_wigner(first, second, rho); });

  ResultTable table;
  table.columns = {"o", "p_mid", "w"};
  for (Eigen::Index i = 0; i < w.weight.rows(); ++i) {
    for (std::size_t c = 0; c < w.midpoints.size(); ++c) {
      table.rows.push_back(
          {w.o_values[i], w.midpoints[c],
           w.weight(i, static_cast<Eigen::Index>(c))});
    }
  }
  return table;
}

}  // namespace

ScenarioResult run_scenario_text(const std::string& text,
                                 const RunContext& context) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario parse: ") + e.what());
  }
  const json& mode_j = require(doc, "mode", "scenario");
  if (!mode_j.is_string()) fail("mode", "expected a string");
  const std::string mode = mode_j.get<std::string>();

  std::uint64_t seed = context.fallback_seed;
  if (doc.contains("seed")) {
    const json& js = doc["seed"];
    if (!js.is_number_integer() || js.get<long long>() < 0) {
      fail("seed", "expected a nonnegative integer");
    }
    seed = js.get<std::uint64_t>();
  }
  if (context.cli_seed) seed = *context.cli_seed;

  ScenarioResult result;
  if (mode == "qubit-qubit") {
    result.table = eval_qubit_qubit(doc, context.threads);
  } else if (mode == "weak-values") {
    result.table = eval_weak_values(doc);
  } else if (mode == "probe-qubit") {
    result.table = eval_probe_qubit(doc, context.threads);
  } else if (mode == "qubit-meter") {
    result.table = eval_qubit_meter(doc, context.threads);
  } else if (mode == "wigner") {
    result.table = eval_wigner(doc);
  } else if (mode == "verify") {
    VerifyOptions options;
    options.seed = seed;
    options.threads = context.threads;
    if (doc.contains("cases")) {
      const json& jc = doc["cases"];
      if (!jc.is_number_integer()) fail("cases", "expected an integer");
      options.cases = jc.get<int>();
    }
    if (doc.contains("dims")) {
      const json& jd = doc["dims"];
      if (!jd.is_array() || jd.empty()) fail("dims", "expected a nonempty array");
      options.dims.clear();
      for (std::size_t i = 0; i < jd.size(); ++i) {
        if (!jd[i].is_number_integer()) {
          fail("dims[" + std::to_string(i) + "]", "expected an integer");
        }
        options.dims.push_back(jd[i].get<int>());
      }
    }
    VerifyReport report = run_verify(options);
    result.table = verify_table(report);
    result.verify_passed = report.all_passed;
  } else {
    fail("mode", "unknown mode '" + mode + "'");
  }

  result.table.meta.emplace(result.table.meta.begin(),
                            std::pair<std::string, std::string>{"mode", mode});
  result.table.meta.emplace_back("seed", std::to_string(seed));
  result.table.meta.emplace_back("version", kVersion);
  result.table.meta.emplace_back("digest", fnv1a_hex(text));
  return result;
}

}  // namespace qmeter
