// Copyright 2026 The beamq Authors
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

// beamq command line: case generation, solving, scoring, pattern export
// and phase-code dumps. Exit codes: 0 ok, 2 config error, 3 case failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamq/encoding.hpp"
#include "beamq/io.hpp"
#include "beamq/pipeline.hpp"
#include "beamq/scoring.hpp"

namespace fs = std::filesystem;
using namespace beamq;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCaseFailure = 3;

int cmd_gen_cases(int n, std::uint64_t seed, const std::string& out) {
  write_text_file(out, cases_to_json(generate_cases(n, seed)));
  return 0;
}

int cmd_solve(const std::string& cases_path, const std::string& case_id,
              const std::string& config_path, const std::string& out_dir) {
  const RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
  config.validate();
  std::vector<CaseSpec> cases = cases_from_json(read_text_file(cases_path));
  if (!case_id.empty()) {
    std::erase_if(cases, [&](const CaseSpec& c) { return c.case_id != case_id; });
    if (cases.empty()) throw ConfigError("no case with id '" + case_id + "'");
  }
  if (cases.empty()) throw ConfigError("cases file is empty");

  const BatchResult batch = run_batch(cases, config);
  bool failed = false;
  for (const auto& r : batch.results) {
    write_text_file(fs::path(out_dir) / (r.spec.case_id + ".json"), result_to_json(r));
    std::cout << r.spec.case_id << " y=" << r.breakdown.y << " t=" << r.elapsed_seconds << "s "
              << r.branch_provenance << '\n';
    if (r.error) {
      std::cerr << r.spec.case_id << " failed: " << *r.error << '\n';
      failed = true;
    }
  }
  std::cout << "mean " << batch.mean_score << '\n';
  return failed ? kExitCaseFailure : 0;
}

int cmd_score(const std::string& results_dir, const std::string& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(results_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no result files in " + results_dir);
  std::vector<CaseResult> results;
  std::vector<ScoreBreakdown> breakdowns;
  for (const auto& f : files) {
    results.push_back(result_from_json(read_text_file(f)));
    breakdowns.push_back(results.back().breakdown);
  }
  const double mean = batch_score(breakdowns);
  write_text_file(out, summary_to_json(results, mean));
  std::cout << "mean " << mean << " over " << results.size() << " cases\n";
  return 0;
}

int cmd_pattern(const std::string& result_path, const std::string& out) {
  const CaseResult r = result_from_json(read_text_file(result_path));
  write_text_file(out, pattern_to_csv(export_pattern(r.excitation, AngleGrid::scoring_default())));
  return 0;
}

int cmd_codegen(int bits, const std::string& out) {
  if (bits < 1 || bits > 4) throw ConfigError("bits must lie in 1..4");
  write_text_file(out, phase_code_to_json(phase_code(bits)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam synthesis for uniform linear arrays"};
  app.require_subcommand(1);

  int n = 0;
  std::uint64_t seed = 0;
  std::string out, cases_path, case_id, config_path, results_dir, result_path;
  int bits = 0;

  auto* gen = app.add_subcommand("gen-cases", "Generate seeded test cases");
  gen->add_option("--n", n, "Number of cases")->required();
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out, "Output cases.json")->required();

  auto* solve = app.add_subcommand("solve", "Run the synthesis pipeline");
  solve->add_option("--cases", cases_path, "cases.json")->required();
  solve->add_option("--case-id", case_id, "Only this case");
  solve->add_option("--config", config_path, "run.toml");
  solve->add_option("--out", out, "Output directory")->required();

  auto* score = app.add_subcommand("score", "Summarize result files");
  score->add_option("--results", results_dir, "Directory of result JSON")->required();
  score->add_option("--out", out, "Output summary.json")->required();

  auto* pat = app.add_subcommand("pattern", "Export a result's power pattern");
  pat->add_option("--result", result_path, "Result JSON")->required();
  pat->add_option("--out", out, "Output CSV")->required();

  auto* codegen = app.add_subcommand("codegen", "Dump phase-code coefficients");
  codegen->add_option("--bits", bits, "Phase bits (1..4)")->required();
  codegen->add_option("--out", out, "Output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) return cmd_gen_cases(n, seed, out);
    if (*solve) return cmd_solve(cases_path, case_id, config_path, out);
    if (*score) return cmd_score(results_dir, out);
    if (*pat) return cmd_pattern(result_path, out);
    if (*codegen) return cmd_codegen(bits, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
