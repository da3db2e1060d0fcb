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

// Exit codes: 0 success, 1 numerical failure (a verification campaign found a
// mismatch or an internal invariant broke), 2 malformed input. Output is
// written only after the whole computation succeeded, so a failing run never
// leaves a partial result file.

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qmeter/errors.hpp"
#include "qmeter/result_table.hpp"
#include "qmeter/scenario.hpp"
#include "qmeter/verify.hpp"
#include "qmeter/version.hpp"

namespace {

using qmeter::ResultTable;
using qmeter::ValidationError;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("QMETER_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0') {
    throw ValidationError(std::string("QMETER_SEED is not a nonnegative integer: '") +
                          raw + "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw ValidationError("cannot read scenario file '" + path + "'");
  return buffer.str();
}

void write_output(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(bytes.data(), 1, bytes.size(), stdout);
    if (std::fflush(stdout) != 0) {
      throw qmeter::NumericalError("failed to flush stdout");
    }
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open output file '" + out_path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out.good()) throw ValidationError("failed writing output file '" + out_path + "'");
}

std::string render(const ResultTable& table, const std::string& format) {
  return format == "json" ? qmeter::emit_json(table) : qmeter::emit_csv(table);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and perturbative statistics of weak quantum measurements"};
  app.set_version_flag("--version", std::string("qmeter ") + qmeter::kVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed_value = 0;
  int threads = 1;

  CLI::App* run = app.add_subcommand("run", "Evaluate a JSON scenario file");
  run->add_option("file", scenario_path, "Scenario file (JSON)")->required();
  run->add_option("--out", out_path, "Write the table here instead of stdout");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  CLI::Option* run_seed = run->add_option("--seed", seed_value, "Random seed");
  run->add_option("--threads", threads, "Worker threads")
      ->check(CLI::Range(1, 256));

  int cases = 200;
  std::vector<int> dims = {2, 3, 4, 5, 8};
  CLI::App* verify =
      app.add_subcommand("verify", "Run the closed-form-vs-simulator campaign");
  verify->add_option("--cases", cases, "Scenarios per table row")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--dims", dims, "Pointer/system dimensions")->delimiter(',');
  CLI::Option* verify_seed = verify->add_option("--seed", seed_value, "Random seed");
  verify->add_option("--threads", threads, "Worker threads")
      ->check(CLI::Range(1, 256));
  verify->add_option("--out", out_path, "Write the table here instead of stdout");
  verify->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      qmeter::RunContext context;
      if (run_seed->count() > 0) context.cli_seed = seed_value;
      if (auto env = env_seed()) context.fallback_seed = *env;
      context.threads = threads;
      qmeter::ScenarioResult result =
          run_scenario_text(read_file(scenario_path), context);
      write_output(render(result.table, format), out_path);
      return result.verify_passed ? 0 : 1;
    }

    qmeter::VerifyOptions options;
    options.cases = cases;
    options.dims = dims;
    options.threads = threads;
    if (verify_seed->count() > 0) {
      options.seed = seed_value;
    } else if (auto env = env_seed()) {
      options.seed = *env;
    }
    qmeter::VerifyReport report = qmeter::run_verify(options);
    ResultTable table = verify_table(report);

    std::string canonical = "verify;cases=" + std::to_string(options.cases) + ";dims=";
    std::vector<int> sorted_dims = options.dims;
    std::sort(sorted_dims.begin(), sorted_dims.end());
    sorted_dims.erase(std::unique(sorted_dims.begin(), sorted_dims.end()),
                      sorted_dims.end());
    for (std::size_t i = 0; i < sorted_dims.size(); ++i) {
      if (i) canonical += ',';
      canonical += std::to_string(sorted_dims[i]);
    }
    canonical += ";seed=" + std::to_string(options.seed);
    table.meta.emplace_back("mode", "verify");
    table.meta.emplace_back("seed", std::to_string(options.seed));
    table.meta.emplace_back("version", qmeter::kVersion);
    table.meta.emplace_back("digest", qmeter::fnv1a_hex(canonical));

    write_output(render(table, format), out_path);
    return report.all_passed ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "qmeter: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qmeter: " << e.what() << "\n";
    return 1;
  }
}
