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

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "qmeter/errors.hpp"
#include "qmeter/random.hpp"
#include "qmeter/result_table.hpp"
#include "qmeter/scenario.hpp"

using namespace qmeter;

TEST_CASE("format_double survives a decimal round trip bitwise") {
  const double values[] = {0.0,
                           -0.0,
                           0.1,
                           1.0 / 3.0,
                           -2.5e-308,
                           5e-324,
                           1.7e308,
                           3.141592653589793,
                           -123456789.123456789,
                           std::nextafter(1.0, 2.0)};
  for (double v : values) {
    ResultTable t;
    t.columns = {"v"};
    t.rows = {{v}};
    ResultTable back = parse_csv(emit_csv(t));
    REQUIRE(std::memcmp(&back.rows[0][0], &v, sizeof v) == 0);
  }
  Rng rng(77);
  for (int i = 0; i < 2000; ++i) {
    double v = std::ldexp(rng.uniform(-1.0, 1.0), rng.uniform_int(-60, 60));
    ResultTable t;
    t.columns = {"v"};
    t.rows = {{v}};
    ResultTable back = parse_csv(emit_csv(t));
    REQUIRE(std::memcmp(&back.rows[0][0], &v, sizeof v) == 0);
  }
}

TEST_CASE("csv emission and parsing invert each other") {
  ResultTable t;
  t.meta = {{"mode", "demo"}, {"seed", "42"}, {"note", "a=b=c"}};
  t.columns = {"x", "y", "z"};
  Rng rng(3);
  for (int r = 0; r < 20; ++r) {
    t.rows.push_back({rng.normal(), rng.uniform(), rng.uniform(-1e6, 1e6)});
  }
  const std::string text = emit_csv(t);
  ResultTable back = parse_csv(text);
  REQUIRE(back.meta == t.meta);
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      REQUIRE(std::memcmp(&back.rows[r][c], &t.rows[r][c], sizeof(double)) == 0);
    }
  }
  REQUIRE(emit_csv(back) == text);
}

TEST_CASE("csv parser rejects malformed input") {
  CHECK_THROWS_AS(parse_csv("x,y\n1,2"), ValidationError);       // no newline
  CHECK_THROWS_AS(parse_csv("x,y\n1,nope\n"), ValidationError);  // bad number
  CHECK_THROWS_AS(parse_csv("x,y\n1\n"), ValidationError);       // short row
  CHECK_THROWS_AS(parse_csv("x\n1\n# late=meta\n"), ValidationError);
  CHECK_THROWS_AS(parse_csv("# only=meta\n"), ValidationError);  // no header
  CHECK_THROWS_AS(parse_csv("# broken\nx\n"), ValidationError);  // no '='
}

TEST_CASE("json emission carries meta, columns and rows") {
  ResultTable t;
  t.meta = {{"mode", "demo"}, {"seed", "1"}};
  t.columns = {"a", "b"};
  t.rows = {{1.5, -2.0}, {0.25, 1e-3}};
  nlohmann::json doc = nlohmann::json::parse(emit_json(t));
  REQUIRE(doc["meta"]["mode"] == "demo");
  REQUIRE(doc["meta"]["seed"] == "1");
  REQUIRE(doc["columns"] == nlohmann::json({"a", "b"}));
  REQUIRE(doc["rows"].size() == 2);
  REQUIRE(doc["rows"][0][0].get<double>() == 1.5);
  REQUIRE(doc["rows"][1][1].get<double>() == 1e-3);
}

TEST_CASE("fnv1a digest matches the reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

namespace {

const char* kWeakValuesDoc = R"({
  "mode": "weak-values",
  "seed": 5,
  "system": {
    "prep": [1.0, 0.0, 0.0],
    "postselect": {"bloch": [0.0, 0.0, 1.0], "trace": 1.0},
    "axis": [0.0, 1.0, 0.0]
  }
})";

}  // namespace

TEST_CASE("scenario text evaluates with layered seed resolution") {
  RunContext ctx;
  ctx.fallback_seed = 11;
  ScenarioResult r = run_scenario_text(kWeakValuesDoc, ctx);
  REQUIRE(r.verify_passed);
  REQUIRE(r.table.columns.size() == 8);
  REQUIRE(r.table.rows.size() == 1);
  CHECK(r.table.rows[0][0] == Catch::Approx(0.5).margin(1e-14));   // omega
  CHECK(r.table.rows[0][5] == Catch::Approx(-1.0).margin(1e-14));  // Im a_w
  CHECK(r.table.rows[0][7] == 0.0);                                // pure

  auto meta_value = [&](const ResultTable& t, const std::string& key) {
    for (const auto& [k, v] : t.meta) {
      if (k == key) return v;
    }
    return std::string("<missing>");
  };
  CHECK(meta_value(r.table, "mode") == "weak-values");
  CHECK(meta_value(r.table, "seed") == "5");  // file seed beats fallback
  CHECK(meta_value(r.table, "digest") == fnv1a_hex(kWeakValuesDoc));

  ctx.cli_seed = 99;  // explicit seed beats the file
  ScenarioResult forced = run_scenario_text(kWeakValuesDoc, ctx);
  CHECK(meta_value(forced.table, "seed") == "99");
}

TEST_CASE("scenario sweeps are independent of the thread count") {
  const char* doc = R"({
    "mode": "qubit-qubit",
    "system": {
      "prep": [1.0, 0.0, 0.0],
      "postselect": {"bloch": [0.0, 0.0, 1.0], "trace": 1.0},
      "axis": [0.0, 1.0, 0.0]
    },
    "probe": {
      "prep": [0.0, 0.3, 0.8],
      "interaction": [0.0, 0.0, 1.0],
      "readout": [0.0, 1.0, 0.0]
    },
    "coupling": {"start": 0.0, "stop": 3.0, "steps": 37}
  })";
  RunContext serial;
  RunContext wide;
  wide.threads = 4;
  std::string a = emit_csv(run_scenario_text(doc, serial).table);
  std::string b = emit_csv(run_scenario_text(doc, wide).table);
  REQUIRE(a == b);
}

TEST_CASE("verify scenario mode reports per-config rows and a summary") {
  const char* doc = R"({"mode": "verify", "seed": 3, "cases": 5, "dims": [2, 3]})";
  RunContext ctx;
  ctx.threads = 2;
  ScenarioResult r = run_scenario_text(doc, ctx);
  REQUIRE(r.verify_passed);
  // config 0 once, configs 1/2/4 per dim, config 3 per clamped dim, summary.
  REQUIRE(r.table.rows.size() == 1 + 2 + 2 + 2 + 2 + 1);
  const auto& summary = r.table.rows.back();
  CHECK(summary[0] == -1.0);
  CHECK(summary[5] == 1.0);
  for (const auto& row : r.table.rows) CHECK(row[5] == 1.0);
}

TEST_CASE("scenario validation failures carry field paths") {
  RunContext ctx;
  CHECK_THROWS_AS(run_scenario_text("{}", ctx), ValidationError);
  CHECK_THROWS_WITH(
      run_scenario_text(R"({"mode": "qubit-qubit"})", ctx),
      Catch::Matchers::ContainsSubstring("system"));
  CHECK_THROWS_WITH(
      run_scenario_text(
          R"({"mode": "weak-values",
              "system": {"prep": [2, 0, 0],
                         "postselect": {"bloch": [0,0,1], "trace": 1},
                         "axis": [0,0,1]}})",
          ctx),
      Catch::Matchers::ContainsSubstring("system.prep"));
  CHECK_THROWS_WITH(
      run_scenario_text(
          R"({"mode": "wigner",
              "state": {"matrix": [[1, 0], [0, 0]]},
              "observable": {"matrix": [[1, 0], [0, -1]]},
              "write_in": {"matrix": [[1, 0], [0, 1]]}})",
          ctx),
      Catch::Matchers::ContainsSubstring("degenerate"));
}
