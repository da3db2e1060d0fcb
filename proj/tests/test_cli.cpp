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

// End-to-end checks of the command line tool. The binary path comes from the
// QMETER_BIN environment variable (ctest sets it); without it the cases skip.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <catch2/catch_amalgamated.hpp>

#include "qmeter/result_table.hpp"

namespace {

struct CommandResult {
  int status = -1;
  std::string output;
};

CommandResult capture(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

const char* binary() { return std::getenv("QMETER_BIN"); }

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/qmeter_cli_" + name;
  std::ofstream out(path, std::ios::trunc);
  out << body;
  REQUIRE(out.good());
  return path;
}

const char* kWeakValuesDoc = R"({
  "mode": "weak-values",
  "system": {
    "prep": [1.0, 0.0, 0.0],
    "postselect": {"bloch": [0.0, 0.0, 1.0], "trace": 1.0},
    "axis": [0.0, 1.0, 0.0]
  }
})";

}  // namespace

TEST_CASE("cli evaluates a scenario file and honors seed sources") {
  const char* bin = binary();
  if (bin == nullptr) {
    WARN("QMETER_BIN not set; skipping cli cases");
    return;
  }
  std::string path = write_temp("wv.json", kWeakValuesDoc);

  CommandResult r = capture(std::string(bin) + " run " + path + " 2>/dev/null");
  REQUIRE(r.status == 0);
  qmeter::ResultTable table = qmeter::parse_csv(r.output);
  REQUIRE(table.columns.size() == 8);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == 0.5);
  CHECK(table.meta[1] == std::pair<std::string, std::string>{"seed", "0"});

  CommandResult env_seed = capture("QMETER_SEED=17 " + std::string(bin) +
                                   " run " + path + " 2>/dev/null");
  REQUIRE(env_seed.status == 0);
  CHECK(qmeter::parse_csv(env_seed.output).meta[1].second == "17");

  CommandResult flag_seed = capture("QMETER_SEED=17 " + std::string(bin) +
                                    " run " + path + " --seed 4 2>/dev/null");
  REQUIRE(flag_seed.status == 0);
  CHECK(qmeter::parse_csv(flag_seed.output).meta[1].second == "4");

  CommandResult bad_env = capture("QMETER_SEED=xyz " + std::string(bin) +
                                  " run " + path + " 2>/dev/null");
  CHECK(bad_env.status == 2);
}

TEST_CASE("cli maps failure classes to exit codes") {
  const char* bin = binary();
  if (bin == nullptr) {
    WARN("QMETER_BIN not set; skipping cli cases");
    return;
  }
  CHECK(capture(std::string(bin) + " run /tmp/does_not_exist.json 2>/dev/null")
            .status == 2);
  CHECK(capture(std::string(bin) + " --no-such-flag 2>/dev/null").status == 2);
  CHECK(capture(std::string(bin) + " 2>/dev/null").status == 2);
  CHECK(capture(std::string(bin) + " --version 2>/dev/null").status == 0);

  std::string bad = write_temp("bad.json", "{\"mode\": 3}");
  CHECK(capture(std::string(bin) + " run " + bad + " 2>/dev/null").status == 2);
}

TEST_CASE("cli run writes the output file only on success") {
  const char* bin = binary();
  if (bin == nullptr) {
    WARN("QMETER_BIN not set; skipping cli cases");
    return;
  }
  std::string good = write_temp("good.json", kWeakValuesDoc);
  std::string bad = write_temp("broken.json", "{\"mode\": \"weak-values\"}");
  std::string out = "/tmp/qmeter_cli_out.csv";
  std::remove(out.c_str());

  CommandResult fail = capture(std::string(bin) + " run " + bad + " --out " +
                               out + " 2>/dev/null");
  CHECK(fail.status == 2);
  CHECK(!std::ifstream(out).good());

  CommandResult ok = capture(std::string(bin) + " run " + good + " --out " +
                             out + " --format json 2>/dev/null");
  REQUIRE(ok.status == 0);
  CHECK(ok.output.empty());
  std::ifstream in(out);
  REQUIRE(in.good());
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line == "{");
  std::remove(out.c_str());
}

TEST_CASE("cli verify is reproducible and thread independent") {
  const char* bin = binary();
  if (bin == nullptr) {
    WARN("QMETER_BIN not set; skipping cli cases");
    return;
  }
  std::string base = std::string(bin) + " verify --cases 10 --dims 2,3 --seed 5";
  CommandResult a = capture(base + " 2>/dev/null");
  CommandResult b = capture(base + " 2>/dev/null");
  CommandResult c = capture(base + " --threads 4 2>/dev/null");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  REQUIRE(c.status == 0);
  CHECK(a.output == b.output);
  CHECK(a.output == c.output);

  qmeter::ResultTable table = qmeter::parse_csv(a.output);
  REQUIRE(table.rows.size() >= 2);
  CHECK(table.rows.back()[0] == -1.0);
  for (const auto& row : table.rows) CHECK(row[5] == 1.0);
}
