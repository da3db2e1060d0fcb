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

#include "qmeter/probe_qubit.hpp"

#include <cmath>
#include <numbers>

namespace qmeter {

namespace {

// Spectral weights of the initial state in the generator eigenbasis; every
// plain average of a function of the generator reduces to these.
struct GeneratorFrame {
  SpectralDecomposition spec;
  Eigen::VectorXd weights;
};

GeneratorFrame generator_frame(const ProbeSpec& probe) {
  GeneratorFrame frame{spectral(probe.write_in), {}};
  const Matrix in_basis =
      frame.spec.vectors.adjoint() * probe.state.matrix() * frame.spec.vectors;
  frame.weights = in_basis.diagonal().real();
  return frame;
}

double spectral_average(const GeneratorFrame& frame,
                        const std::function<double(double)>& u) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < frame.weights.size(); ++j) {
    sum += u(frame.spec.values[j]) * frame.weights[j];
  }
  return sum;
}

void require_defined(const WeakValueSet& wv) {
  if (!wv.defined) throw UndefinedWeakValueError();
}

double normalizer_from_frame(const GeneratorFrame& frame,
                             const WeakValueSet& wv, double coupling) {
  const double avg_sin = spectral_average(
      frame, [coupling](double p) { return std::sin(2.0 * coupling * p); });
  const double avg_cos = spectral_average(
      frame, [coupling](double p) { return std::cos(2.0 * coupling * p); });
  return 0.5 * (1.0 + wv.b_w) - wv.a_w.imag() * avg_sin +
         0.5 * (1.0 - wv.b_w) * avg_cos;
}

void require_conditionable(double normalizer) {
  if (normalizer <= 1e-14) throw NullConditioningError();
}

}  // namespace

ProbeSpec::ProbeSpec(DensityOperator state_in, HermitianOperator write_in_in)
    : state(std::move(state_in)), write_in(std::move(write_in_in)) {
  if (state.dim() != write_in.dim()) {
    throw ValidationError("ProbeSpec: state and generator dimensions disagree");
  }
}

ConditionalProbeState conditional_probe_state(const ProbeSpec& probe,
                                              const WeakValueSet& wv,
                                              double coupling) {
  require_defined(wv);
  const SpectralDecomposition spec = spectral(probe.write_in);
  const Matrix c = map_spectrum(
      spec, [coupling](double p) { return Complex(std::cos(coupling * p), 0); });
  const Matrix s = map_spectrum(
      spec, [coupling](double p) { return Complex(std::sin(coupling * p), 0); });
  const Matrix& rho = probe.state.matrix();

  const Complex i(0.0, 1.0);
  const Matrix unnormalized = c * rho * c - i * std::conj(wv.a_w) * c * rho * s +
                              i * wv.a_w * s * rho * c + wv.b_w * s * rho * s;
  const double trace = unnormalized.trace().real();

  // Self-check: the trace must reproduce the closed normalizer form.
  const double closed = normalizer_from_frame(generator_frame(probe), wv, coupling);
  const double scale = 1.0 + std::abs(wv.b_w) + std::abs(wv.a_w.imag());
  if (std::abs(trace - closed) > 1e-12 * scale) {
    throw NumericalError(
        "conditional_probe_state: trace disagrees with the closed normalizer");
  }
  require_conditionable(trace);
  const Matrix state = 0.5 * (unnormalized + unnormalized.adjoint()) / trace;
  return {DensityOperator(state), trace};
}

double postselection_probability_general(const ProbeSpec& probe,
                                         const WeakValueSet& wv,
                                         double coupling) {
  const GeneratorFrame frame = generator_frame(probe);
  const double avg_sin = spectral_average(
      frame, [coupling](double p) { return std::sin(2.0 * coupling * p); });
  const double avg_cos = spectral_average(
      frame, [coupling](double p) { return std::cos(2.0 * coupling * p); });
  return 0.5 * (wv.omega + wv.beta) - wv.alpha.imag() * avg_sin +
         0.5 * (wv.omega - wv.beta) * avg_cos;
}

double conditional_average_fP(const ProbeSpec& probe, const WeakValueSet& wv,
                              double coupling,
                              const std::function<double(double)>& f) {
  require_defined(wv);
  const GeneratorFrame frame = generator_frame(probe);
  const double normalizer = normalizer_from_frame(frame, wv, coupling);
  require_conditionable(normalizer);

  const double f_sin = spectral_average(frame, [&](double p) {
    return f(p) * std::sin(2.0 * coupling * p);
  });
  const double f_cos = spectral_average(frame, [&](double p) {
    return f(p) * std::cos(2.0 * coupling * p);
  });
  const double f_plain = spectral_average(frame, f);
  return (-wv.a_w.imag() * f_sin + 0.5 * (1.0 + wv.b_w) * f_plain +
          0.5 * (1.0 - wv.b_w) * f_cos) /
         normalizer;
}

double conditional_average_gO(const ProbeSpec& probe,
                              const HermitianOperator& obs,
                              const WeakValueSet& wv, double coupling,
                              const std::function<double(double)>& g) {
  require_defined(wv);
  if (obs.dim() != probe.dim()) {
    throw ValidationError("conditional_average_gO: dimension mismatch");
  }
  const GeneratorFrame frame = generator_frame(probe);
  const double normalizer = normalizer_from_frame(frame, wv, coupling);
  require_conditionable(normalizer);

  const Matrix g_obs = map_spectrum(
      spectral(obs), [&g](double o) { return Complex(g(o), 0.0); });
  const Matrix rot = herm_exp(probe.write_in, coupling);
  const Matrix& rho = probe.state.matrix();
  const double avg_up =
      (rho * rot * g_obs * rot.adjoint()).trace().real();
  const double avg_down =
      (rho * rot.adjoint() * g_obs * rot).trace().real();

  const WignerTable table = build_wigner(obs, probe.write_in, probe.state);
  const double mixed_sin = generalized_average(table, [&](double o, double m) {
    return g(o) * std::sin(2.0 * coupling * m);
  });
  const double mixed_cos = generalized_average(table, [&](double o, double m) {
    return g(o) * std::cos(2.0 * coupling * m);
  });

  return (-0.5 * wv.a_w.real() * (avg_up - avg_down) -
          wv.a_w.imag() * mixed_sin +
          0.25 * (1.0 + wv.b_w) * (avg_up + avg_down) +
          0.5 * (1.0 - wv.b_w) * mixed_cos) /
         normalizer;
}

LatticeProbe::LatticeProbe(int dim, double origin, double spacing,
                           DensityOperator state)
    : dim_(dim),
      origin_(origin),
      spacing_(spacing),
      state_(std::move(state)),
      position_(Matrix::Identity(1, 1)),   // replaced below
      generator_(Matrix::Identity(1, 1)) {
  if (dim < 2) {
    throw ValidationError("LatticeProbe: need at least two sites");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing) || !std::isfinite(origin)) {
    throw ValidationError("LatticeProbe: malformed grid parameters");
  }
  if (state_.dim() != dim) {
    throw ValidationError("LatticeProbe: state dimension mismatch");
  }
  Matrix pos = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) pos(k, k) = origin + k * spacing;
  position_ = HermitianOperator(std::move(pos));

  // Discrete Fourier frame: column k is the shift eigenvector with eigenphase
  // -2 pi k / dim, mapped to (-pi, pi]. Dividing the phases by the spacing
  // gives a generator whose exponential at integer multiples of the spacing
  // is an exact cyclic shift.
  const double tau = 2.0 * std::numbers::pi;
  Matrix fourier(dim, dim);
  const double norm = 1.0 / std::sqrt(double(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      const double arg = tau * double(j) * double(k) / double(dim);
      fourier(j, k) = norm * Complex(std::cos(arg), std::sin(arg));
    }
  }
  Vector phases(dim);
  for (int k = 0; k < dim; ++k) {
    double phi = -tau * double(k) / double(dim);
    if (phi < -std::numbers::pi + 1e-12) phi += tau;
    phases[k] = Complex(phi / spacing, 0.0);
  }
  Matrix gen = fourier * phases.asDiagonal() * fourier.adjoint();
  generator_ = HermitianOperator(0.5 * (gen + gen.adjoint()));
}

int LatticeProbe::shift_steps(double coupling) const {
  const double ratio = coupling / spacing_;
  const double rounded = std::round(ratio);
  if (std::abs(coupling - rounded * spacing_) > 1e-9) {
    throw OffLatticeCouplingError();
  }
  return static_cast<int>(rounded);
}

double conditional_average_gQ(const LatticeProbe& probe, const WeakValueSet& wv,
                              double coupling,
                              const std::function<double(double)>& g) {
  require_defined(wv);
  const int steps = probe.shift_steps(coupling);
  const ProbeSpec spec = probe.probe();
  const GeneratorFrame frame = generator_frame(spec);
  const double normalizer = normalizer_from_frame(frame, wv, coupling);
  require_conditionable(normalizer);

  const int d = probe.dim();
  const auto site_value = [&](int k) {
    return probe.origin() + k * probe.spacing();
  };
  const auto wrap = [d](int k) { return ((k % d) + d) % d; };
  double avg_up = 0.0, avg_down = 0.0;  // g at positions shifted by +-coupling
  const Matrix& rho = probe.state().matrix();
  for (int j = 0; j < d; ++j) {
    const double population = rho(j, j).real();
    avg_up += g(site_value(wrap(j + steps))) * population;
    avg_down += g(site_value(wrap(j - steps))) * population;
  }

  const WignerTable table =
      build_wigner(probe.position(), probe.shift_generator(), probe.state());
  const double mixed_sin = generalized_average(table, [&](double o, double m) {
    return g(o) * std::sin(2.0 * coupling * m);
  });
  const double mixed_cos = generalized_average(table, [&](double o, double m) {
    return g(o) * std::cos(2.0 * coupling * m);
  });

  return (0.5 * wv.a_w.real() * (avg_up - avg_down) -
          wv.a_w.imag() * mixed_sin +
          0.25 * (1.0 + wv.b_w) * (avg_up + avg_down) +
          0.5 * (1.0 - wv.b_w) * mixed_cos) /
         normalizer;
}

}  // namespace qmeter
