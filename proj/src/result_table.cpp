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

#include "qmeter/result_table.hpp"

#include <charconv>
#include <cstdint>
#include <system_error>

#include <nlohmann/json.hpp>

#include "qmeter/errors.hpp"

namespace qmeter {
namespace {

double parse_double(std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("csv: malformed numeric field '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericalError("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string emit_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [key, value] : table.meta) {
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ValidationError("csv: row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(const ResultTable& table) {
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ValidationError("json: row width does not match header");
    }
    rows.push_back(row);
  }
  nlohmann::json doc;
  doc["meta"] = std::move(meta);
  doc["columns"] = table.columns;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

ResultTable parse_csv(const std::string& text) {
  ResultTable table;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      throw ValidationError("csv: missing trailing newline");
    }
    std::string_view line(text.data() + start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header_seen) throw ValidationError("csv: comment after header");
      std::string_view body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw ValidationError("csv: metadata line without '='");
      }
      table.meta.emplace_back(std::string(body.substr(0, eq)),
                              std::string(body.substr(eq + 1)));
      continue;
    }
    if (!header_seen) {
      for (std::string_view name : split(line, ',')) {
        table.columns.emplace_back(name);
      }
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    for (std::string_view field : split(line, ',')) {
      row.push_back(parse_double(field));
    }
    if (row.size() != table.columns.size()) {
      throw ValidationError("csv: row width does not match header");
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ValidationError("csv: missing header row");
  return table;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[hash & 0xf];
    hash >>= 4;
  }
  return std::string(buf, 16);
}

}  // namespace qmeter
