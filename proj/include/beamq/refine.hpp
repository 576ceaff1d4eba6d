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

#include <span>
#include <string>
#include <vector>

#include "beamq/encoding.hpp"
#include "beamq/solvers.hpp"

namespace beamq {

struct Candidate {
  SpinVector spins;            ///< may be empty for non-Ising candidates
  std::vector<double> phases;  ///< decoded, in [0, 2pi)
  std::vector<double> amplitudes;  ///< empty means unit amplitudes
  double energy = 0.0;
  std::string provenance;
};

using CandidateSet = std::vector<Candidate>;

/// Decodes every spin assignment of a solver batch under `code`.
CandidateSet decode_candidates(const CandidateBatch& batch, const PhaseCode& code);

/// Drops repeated spin assignments, keeping the first occurrence.
CandidateSet dedup(const CandidateSet& candidates);

/// Mean per-antenna circular distance, in [0, pi].
double phase_distance(std::span<const double> a, std::span<const double> b);

/// Row-major M x M matrix of phase_distance.
std::vector<double> distance_matrix(const CandidateSet& candidates);

/// Deduplicates, then merges clusters agglomeratively until at most m remain.
/// Each step merges the pair minimizing (sum of cross distances) / (|Cp| + |Cq|);
/// inter-cluster distances follow the size-weighted average update. Each
/// cluster is represented by its medoid. Output is sorted by energy; ties
/// at every stage go to the lowest index.
CandidateSet cluster_refine(const CandidateSet& candidates, std::size_t m);

}  // namespace beamq
