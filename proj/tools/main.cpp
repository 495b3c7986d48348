// Copyright 2026 The qnet-privacy Authors
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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnet/report.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "scenario JSON file")
      ->required()
      ->type_name("FILE");
  sub->add_option("--out", o.out,
                  "write the JSON report to this file (default: stdout; "
                  "noise-sweep also writes a sibling .csv)")
      ->type_name("FILE");
  sub->add_option("--seed", o.seed, "override the scenario RNG seed");
  sub->add_option("--tol", o.tol, "override the privacy tolerance");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qnet::ArgumentError("cannot open output file: " + path);
  out << content;
  if (!out) throw qnet::ArgumentError("failed writing output file: " + path);
}

/// Exit codes: 0 success, 1 failed certification, 2 invalid input or
/// numerical failure.
int run_task(const std::string& task, const Options& o) {
  qnet::Scenario scenario = qnet::load_scenario(o.config);
  if (scenario.task != task) {
    throw qnet::ArgumentError("scenario declares task '" + scenario.task +
                              "' but the '" + task + "' subcommand was invoked");
  }
  if (o.seed.has_value()) scenario.seed = *o.seed;
  if (o.tol.has_value()) {
    if (!(*o.tol > 0.0)) throw qnet::ArgumentError("--tol must be > 0");
    scenario.privacy_tol = *o.tol;
  }

  bool certify_ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json report = qnet::run_scenario(scenario, &certify_ok);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // Timing lives outside the deterministic report body; strip this key
  // before comparing runs.
  report["timing"] = nlohmann::json{{"seconds", seconds}};

  const std::string body = report.dump(2) + "\n";
  if (task == "noise_sweep") {
    const std::string csv = qnet::sweep_csv(report);
    if (o.out.empty()) {
      std::cout << csv;
    } else {
      write_file(o.out, body);
      std::filesystem::path csv_path(o.out);
      csv_path.replace_extension(".csv");
      write_file(csv_path.string(), csv);
    }
  } else if (o.out.empty()) {
    std::cout << body;
  } else {
    write_file(o.out, body);
  }
  return (task == "certify" && !certify_ok) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Privacy analysis for quantum sensor networks: Fisher information, "
      "linear-function privacy certification, local-noise robustness, and "
      "Monte-Carlo estimation of the GHZ mean-parameter protocol."};
  app.set_version_flag("--version", qnet::kToolVersion);
  app.require_subcommand(1);

  Options opts;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Fisher matrices, privacy verdicts, and the Cramér–Rao bound");
  CLI::App* sweep = app.add_subcommand(
      "noise-sweep", "privacy degradation versus noise strength (CSV + JSON)");
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo mean estimation with the GHZ parity protocol");
  CLI::App* certify = app.add_subcommand(
      "certify", "check privacy conditions; exit 1 when any check fails");
  for (CLI::App* sub : {analyze, sweep, simulate, certify}) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string task = analyze->parsed()    ? "analyze"
                           : sweep->parsed()    ? "noise_sweep"
                           : simulate->parsed() ? "simulate"
                                                : "certify";
  try {
    return run_task(task, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
