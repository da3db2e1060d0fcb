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

#include "qmeter/result_table.hpp"

namespace qmeter {

// Self-check campaign: every closed-form module is driven on randomized
// scenarios against the brute-force joint simulator (or, for the
// quasiprobability table, against its defining sum rules).
//
// Config ids:
//   0  qubit system, qubit probe: postselection probability and readout average
//   1  qubit system, d-dimensional pointer: probability, conditional state,
//      generator averages, noncommuting-observable averages
//   2  d-dimensional system, qubit meter: joint readout probabilities
//   3  quasiprobability table: reality, marginals (dimension capped at 6)
//   4  lattice pointer: position averages under on-grid couplings
struct VerifyOptions {
  int cases = 200;                     // per table row
  std::vector<int> dims = {2, 3, 4, 5, 8};
  std::uint64_t seed = 0;
  int threads = 1;
};

struct VerifyRow {
  int config = 0;   // -1 for the summary row
  int dim = 0;
  int cases = 0;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;  // summary last
  bool all_passed = false;
};

// Deterministic for fixed options; the thread count changes scheduling only,
// never results.
VerifyReport run_verify(const VerifyOptions& options);

// Columns config, dim, cases, max_abs_error, tolerance, passed. No metadata;
// callers add it.
ResultTable verify_table(const VerifyReport& report);

}  // namespace qmeter
