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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmeter {

// Rectangular numeric result set plus ordered string metadata. All emitters
// are deterministic: the same table yields the same bytes.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// 17 significant digits, '.' decimal separator, locale independent;
// parsing the output recovers the exact bits.
std::string format_double(double v);

// Lines "# key=value", then the comma-joined header, then one line per row;
// newline terminated.
std::string emit_csv(const ResultTable& table);

// Object with "meta" (string map), "columns" and "rows".
std::string emit_json(const ResultTable& table);

// Inverse of emit_csv; values round-trip bitwise.
ResultTable parse_csv(const std::string& text);

// FNV-1a 64-bit, hex encoded; used to fingerprint scenario inputs.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace qmeter
