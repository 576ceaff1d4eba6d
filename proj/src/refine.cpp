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

#include "beamq/refine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace beamq {

CandidateSet decode_candidates(const CandidateBatch& batch, const PhaseCode& code) {
  CandidateSet out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out.push_back({batch.spins[i], decode_phases(code, batch.spins[i]), {}, batch.energies[i],
                   std::string(to_string(batch.provenance[i]))});
  }
  return out;
}

CandidateSet dedup(const CandidateSet& candidates) {
  std::set<SpinVector> seen;
  CandidateSet out;
  for (const auto& c : candidates) {
    // Candidates without spins are distinguished by their phases instead.
    const bool fresh = c.spins.empty() ? std::none_of(out.begin(), out.end(), [&](const auto& o) {
      return o.spins.empty() && o.phases == c.phases;
    })
                                       : seen.insert(c.spins).second;
    if (fresh) out.push_back(c);
  }
  return out;
}

double phase_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("phase vectors differ in length");
  if (a.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::abs(wrap_two_pi(a[k]) - wrap_two_pi(b[k]));
    total += std::min(d, kTwoPi - d);
  }
  return total / static_cast<double>(a.size());
}

std::vector<double> distance_matrix(const CandidateSet& candidates) {
  const std::size_t m = candidates.size();
  std::vector<double> d(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = phase_distance(candidates[i].phases, candidates[j].phases);
      d[i * m + j] = v;
      d[j * m + i] = v;
    }
  }
  return d;
}

CandidateSet cluster_refine(const CandidateSet& candidates, std::size_t m) {
  if (m < 1) throw std::invalid_argument("cluster_refine needs m >= 1");
  const CandidateSet unique = dedup(candidates);
  const std::size_t total = unique.size();
  const std::vector<double> base = distance_matrix(unique);

  std::vector<std::vector<std::size_t>> members(total);
  for (std::size_t i = 0; i < total; ++i) members[i] = {i};
  std::vector<bool> active(total, true);
  std::vector<double> link = base;  // average inter-cluster distance
  std::size_t remaining = total;

  while (remaining > m) {
    std::size_t best_p = 0, best_q = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < total; ++p) {
      if (!active[p]) continue;
      const double np = static_cast<double>(members[p].size());
      for (std::size_t q = p + 1; q < total; ++q) {
        if (!active[q]) continue;
        const double nq = static_cast<double>(members[q].size());
        const double crit = link[p * total + q] * np * nq / (np + nq);
        if (crit < best) {
          best = crit;
          best_p = p;
          best_q = q;
        }
      }
    }
    const double np = static_cast<double>(members[best_p].size());
    const double nq = static_cast<double>(members[best_q].size());
    for (std::size_t r = 0; r < total; ++r) {
      if (!active[r] || r == best_p || r == best_q) continue;
      const double v = (np * link[best_p * total + r] + nq * link[best_q * total + r]) / (np + nq);
      link[best_p * total + r] = v;
      link[r * total + best_p] = v;
    }
    members[best_p].insert(members[best_p].end(), members[best_q].begin(), members[best_q].end());
    std::sort(members[best_p].begin(), members[best_p].end());
    members[best_q].clear();
    active[best_q] = false;
    --remaining;
  }

  std::vector<std::size_t> reps;
  for (std::size_t c = 0; c < total; ++c) {
    if (!active[c]) continue;
    std::size_t medoid = members[c].front();
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i : members[c]) {
      double sum = 0.0;
      for (std::size_t j : members[c]) sum += base[i * total + j];
      if (sum < best_sum) {
        best_sum = sum;
        medoid = i;
      }
    }
    reps.push_back(medoid);
  }
  std::sort(reps.begin(), reps.end());
  std::stable_sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    return unique[a].energy < unique[b].energy;
  });
  CandidateSet out;
  out.reserve(reps.size());
  for (std::size_t i : reps) out.push_back(unique[i]);
  return out;
}

}  // namespace beamq
