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

#pragma once

// File formats. JSON numbers are always written in plain decimal notation
// (no exponents); non-finite values become null. Parse failures and schema
// violations throw ConfigError.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "beamq/encoding.hpp"
#include "beamq/pipeline.hpp"

namespace beamq {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string cases_to_json(const std::vector<CaseSpec>& cases);
std::vector<CaseSpec> cases_from_json(const std::string& text);

std::string breakdown_to_json(const ScoreBreakdown& breakdown);
std::string result_to_json(const CaseResult& result);
CaseResult result_from_json(const std::string& text);

/// Per-case breakdowns keyed by case id, plus the mean score.
std::string summary_to_json(const std::vector<CaseResult>& results, double mean_score);

std::string phase_code_to_json(const PhaseCode& code);

/// TOML run configuration. Unknown keys are rejected; missing keys keep the
/// RunConfig defaults.
RunConfig parse_run_config(const std::string& toml_text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Deterministic serialization of every output-affecting field (threads excluded).
std::string run_config_canonical(const RunConfig& config);

std::string pattern_to_csv(const std::vector<std::pair<double, double>>& rows);
std::vector<std::pair<double, double>> pattern_from_csv(const std::string& text);

}  // namespace beamq
