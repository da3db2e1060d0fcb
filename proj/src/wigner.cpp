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

#include "qmeter/wigner.hpp"

#include <algorithm>
#include <cmath>

namespace qmeter {

namespace {

constexpr double kMidpointMergeTol = 1e-9;

// Clusters sorted candidate values whose neighbors are within the merge
// tolerance; returns cluster means.
std::vector<double> merge_midpoints(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > kMidpointMergeTol) {
      double sum = 0.0;
      for (std::size_t k = start; k < i; ++k) sum += values[k];
      out.push_back(sum / double(i - start));
      start = i;
    }
  }
  return out;
}

std::size_t locate(const std::vector<double>& midpoints, double value) {
  const auto it =
      std::lower_bound(midpoints.begin(), midpoints.end(), value - kMidpointMergeTol);
  if (it == midpoints.end() || std::abs(*it - value) > 2.0 * kMidpointMergeTol) {
    throw NumericalError("wigner: midpoint lookup failed");
  }
  return static_cast<std::size_t>(it - midpoints.begin());
}

}  // namespace

WignerTable build_wigner(const HermitianOperator& first,
                         const HermitianOperator& second,
                         const DensityOperator& rho) {
  if (first.dim() != second.dim() || first.dim() != rho.dim()) {
    throw ValidationError("build_wigner: operator dimensions disagree");
  }
  const SpectralDecomposition so = spectral(first);
  const SpectralDecomposition sp = spectral(second);
  require_distinct(so.values);
  require_distinct(sp.values);

  const Eigen::Index d = first.dim();
  // overlap(i, j) = <o_i|p_j>; cross(j, k) = <p_j|rho|p_k>.
  const Matrix overlap = so.vectors.adjoint() * sp.vectors;
  const Matrix cross = sp.vectors.adjoint() * rho.matrix() * sp.vectors;

  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j; k < d; ++k) {
      candidates.push_back(0.5 * (sp.values[j] + sp.values[k]));
    }
  }
  WignerTable table;
  table.o_values = so.values;
  table.p_values = sp.values;
  table.midpoints = merge_midpoints(std::move(candidates));

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(
      d, static_cast<Eigen::Index>(table.midpoints.size()));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto col = static_cast<Eigen::Index>(
          locate(table.midpoints, 0.5 * (sp.values[j] + sp.values[k])));
      for (Eigen::Index i = 0; i < d; ++i) {
        acc(i, col) += overlap(i, j) * cross(j, k) * std::conj(overlap(i, k));
      }
    }
  }
  table.weight = acc.real();
  table.imag_residual = acc.imag().cwiseAbs().maxCoeff();
  return table;
}

double generalized_average(const WignerTable& table,
                           const std::function<double(double, double)>& f) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < table.weight.rows(); ++i) {
    for (Eigen::Index k = 0; k < table.weight.cols(); ++k) {
      sum += f(table.o_values[i], table.midpoints[static_cast<std::size_t>(k)]) *
             table.weight(i, k);
    }
  }
  return sum;
}

}  // namespace qmeter
