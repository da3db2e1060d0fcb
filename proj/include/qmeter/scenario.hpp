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
#include <optional>
#include <string>

#include "qmeter/result_table.hpp"

namespace qmeter {

// Seed and thread settings resolved by the caller. The effective seed is
// cli_seed if set, else the scenario file's "seed" field, else fallback_seed.
struct RunContext {
  std::optional<std::uint64_t> cli_seed;
  std::uint64_t fallback_seed = 0;
  int threads = 1;
};

struct ScenarioResult {
  ResultTable table;
  // False only when a verify campaign ran and found a mismatch; the table is
  // still complete in that case.
  bool verify_passed = true;
};

// Evaluates a JSON scenario ("mode" selects the computation) into a table
// with mode/seed/version/digest metadata. Malformed input, inconsistent
// operators and unresolvable conditioning all raise ValidationError with the
// offending field path in the message.
ScenarioResult run_scenario_text(const std::string& text,
                                 const RunContext& context);

}  // namespace qmeter
