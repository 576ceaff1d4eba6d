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

// Batched heuristic minimizers for E(s) = -s^T J s - h^T s + offset.
//
// Every kind evolves `batch_size` independent continuous states driven by
// the coupling field g(x) = J_off x + h/2 (half the negative energy
// gradient with J's diagonal dropped, since s_i^2 = 1 makes it constant),
// scaled by xi. Spins are the signs of the final state; the best sign
// readout seen at periodic checkpoints is kept per batch slot.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beamq/ising.hpp"

namespace beamq {

enum class SolverKind { BSB, DSB, SimCIM, LQA, CAC, CFC, NMFA };

inline constexpr std::array<SolverKind, 7> kAllSolverKinds = {
    SolverKind::BSB, SolverKind::DSB, SolverKind::SimCIM, SolverKind::LQA,
    SolverKind::CAC, SolverKind::CFC, SolverKind::NMFA};

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(std::string_view name);

/// Shared run parameters plus named per-kind constants.
///
/// Recognized override keys (defaults in parentheses):
///   all kinds:  init_scale (0.01)
///   BSB, DSB:   a0 (1.0)
///   SimCIM:     pump_start (-1.0), pump_end (1.0), noise (0.05)
///   LQA:        gamma (1.0), lr (0.1)
///   CAC:        pump_start (-1.0), pump_end (1.0), target (1.0), beta (0.3)
///   CFC:        pump_start (-1.0), pump_end (1.0), target (1.0), beta (0.3),
///               step_scale (1/3, multiplies dt)
///   NMFA:       rho (0.15), t_start (2.0), t_end (0.02), noise (0.15)
/// noise_amplitude, when set, replaces the kind's noise default.
struct SolverConfig {
  int batch_size = 64;
  int iterations = 1000;
  double dt = 0.3;
  std::optional<double> xi;               ///< unset: 0.5 / (sqrt(K) * sigma_J)
  std::optional<double> noise_amplitude;
  std::uint64_t seed = 0;
  int readout_interval = 10;
  std::map<std::string, double> overrides;

  void validate() const;
  double param(const std::string& key, double fallback) const;
};

using KindConfigs = std::map<SolverKind, SolverConfig>;

struct CandidateBatch {
  std::vector<SpinVector> spins;
  std::vector<double> energies;
  std::vector<SolverKind> provenance;

  std::size_t size() const { return spins.size(); }
  bool empty() const { return spins.empty(); }
  /// Lowest energy, earliest index on ties. Throws on an empty batch.
  std::size_t best_index() const;
  void append(const CandidateBatch& other);
};

/// Default coupling scale for a problem.
double auto_xi(const IsingProblem& problem);

CandidateBatch solve(const IsingProblem& problem, SolverKind kind, const SolverConfig& config);

/// Independent runs of each enabled kind, concatenated in `enabled` order.
/// Kinds may run on parallel workers; output does not depend on threading.
/// Every enabled kind must have an entry in `configs`.
CandidateBatch rainbow_solve(const IsingProblem& problem, const KindConfigs& configs,
                             std::span<const SolverKind> enabled, int threads = 0);

CandidateBatch rainbow_solve(const IsingProblem& problem, const SolverConfig& shared,
                             std::span<const SolverKind> enabled, int threads = 0);

/// Exact minimum by enumeration, K <= 24. Ties resolve to the
/// lexicographically first assignment with +1 ordered before -1.
std::pair<SpinVector, double> brute_force(const IsingProblem& problem);

}  // namespace beamq
