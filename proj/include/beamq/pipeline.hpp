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

// Per-case hybrid synthesis.
//
// Quantum-inspired branch: phase Ising problem -> solver ensemble -> decode,
// dedup and cluster to m candidates -> (amp_opt) amplitude Ising problem per
// candidate -> ensemble -> decode -> Adam refinement. Classical branch:
// random-restart Adam on relaxed phases, snapped. Every candidate, plus the
// snapped steered-uniform fallback, is scored on the full grid and the best
// y wins, earliest pool position on ties (quantum, classical, fallback).
//
// The wall-clock budget is checked between stages and between per-candidate
// steps, so output is deterministic unless a deadline actually fires.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beamq/array_model.hpp"
#include "beamq/gradient.hpp"
#include "beamq/ising.hpp"
#include "beamq/scoring.hpp"
#include "beamq/solvers.hpp"

namespace beamq {

struct CaseSpec {
  std::string case_id;
  double theta0 = 90.0;
  int bits = 1;
  bool amp_opt = false;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BudgetSplit {
  double phase_solve = 0.5;
  double quantum_amplitude = 0.2;
  double gradient_branch = 0.15;
  double refine_eval = 0.15;
};

/// Pipeline objective: the guard matches the 6 degree beamwidth target and
/// the blend favours sidelobe suppression. Tuned on generated cases.
inline SidelobeConfig pipeline_sidelobe_defaults() {
  SidelobeConfig c;
  c.guard_halfwidth = 3.0;
  c.blend_weight = 0.2;
  c.near_weight = 10.0;
  c.far_weight = 2.0;
  return c;
}

/// Smaller batches for the per-candidate amplitude problems.
inline SolverConfig amplitude_solver_defaults() {
  SolverConfig c;
  c.batch_size = 16;
  c.iterations = 500;
  return c;
}

inline AdamConfig amplitude_adam_defaults() {
  AdamConfig c;
  c.learning_rate = 0.02;
  c.iterations = 200;
  return c;
}

struct RunConfig {
  double budget_seconds = 90.0;
  BudgetSplit split;
  std::uint64_t seed = 0;
  int n_antennas = 32;

  SidelobeConfig sidelobe = pipeline_sidelobe_defaults();  ///< theta0 is replaced per case
  SolverConfig phase_solver;
  SolverConfig amp_solver = amplitude_solver_defaults();
  std::map<SolverKind, std::map<std::string, double>> kind_overrides;
  std::vector<SolverKind> kinds{kAllSolverKinds.begin(), kAllSolverKinds.end()};

  int cluster_m = 8;
  int amp_bits = 4;
  int amp_top = 2;  ///< amplitude solutions kept per phase candidate
  int pool_cap = 64;

  AdamConfig adam;
  AdamConfig amp_adam = amplitude_adam_defaults();
  int classical_restarts = 4;

  bool quantum_branch = true;
  bool classical_branch = true;

  double score_step = 0.05;
  ScoringLimits limits;
  int threads = 0;  ///< 0: BEAM_THREADS or hardware concurrency

  void validate() const;
};

struct CaseResult {
  CaseSpec spec;
  Excitation excitation;
  ScoreBreakdown breakdown;
  double elapsed_seconds = 0.0;
  std::string branch_provenance;
  std::string config_fingerprint;
  std::optional<std::string> error;  ///< set when the case failed and scored 0
};

struct BatchResult {
  std::vector<CaseResult> results;
  double mean_score = 0.0;
};

/// Deterministic given (n, seed).
std::vector<CaseSpec> generate_cases(int n, std::uint64_t seed);

/// Steered-uniform phases snapped to the 2^bits grid, unit amplitudes.
Excitation fallback_excitation(int n_antennas, double theta0, int bits);

/// Throws ConfigError for invalid configuration or case.
CaseResult run_case(const CaseSpec& spec, const RunConfig& config);

/// Cases run in order; a failing case scores 0 and records its error.
/// Throws std::invalid_argument on an empty batch.
BatchResult run_batch(const std::vector<CaseSpec>& cases, const RunConfig& config);

/// (theta_deg, dB relative to the peak sample); the peak row is exactly 0.
std::vector<std::pair<double, double>> export_pattern(const Excitation& excitation,
                                                      const AngleGrid& grid);

/// Rebuilds a linear pattern from exported rows.
Pattern import_pattern(const std::vector<std::pair<double, double>>& rows);

/// FNV-1a hash of the canonical serialized config, 16 hex digits.
std::string config_fingerprint(const RunConfig& config);

}  // namespace beamq
